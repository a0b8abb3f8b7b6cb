#include "smfkit/uvar.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace smfkit::uvar {

Value scalar(Rational r) { return Value{r}; }
Value pair_value(Rational a, Rational b) { return Value{a, b}; }

std::string value_to_string(const Value& v) {
    if (v.size() == 1) {
        return v[0].to_string();
    }
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) {
            s += ",";
        }
        s += v[i].to_string();
    }
    s += ")";
    return s;
}

SampleSpace::SampleSpace(std::vector<std::string> outcomes) : outcomes_(std::move(outcomes)) {}

std::shared_ptr<const SampleSpace> SampleSpace::create(std::vector<std::string> outcomes) {
    if (outcomes.empty()) {
        throw std::invalid_argument("SampleSpace: needs at least one outcome");
    }
    std::set<std::string> seen;
    for (const auto& o : outcomes) {
        if (!seen.insert(o).second) {
            throw std::invalid_argument("SampleSpace: duplicate outcome label '" + o + "'");
        }
    }
    return std::shared_ptr<const SampleSpace>(new SampleSpace(std::move(outcomes)));
}

std::shared_ptr<const SampleSpace> SampleSpace::indexed(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        labels.push_back("o" + std::to_string(i));
    }
    return create(std::move(labels));
}

ValueSet ValueSet::from_values(std::vector<Value> values) {
    ValueSet s;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    if (!values.empty()) {
        const std::size_t d = values.front().size();
        for (const auto& v : values) {
            if (v.size() != d) {
                throw std::invalid_argument("ValueSet: mixed value dimensions");
            }
        }
    }
    s.elems_ = std::move(values);
    return s;
}

bool ValueSet::contains(const Value& v) const {
    return std::binary_search(elems_.begin(), elems_.end(), v);
}

std::size_t ValueSet::dim() const {
    return elems_.empty() ? 0 : elems_.front().size();
}

bool ValueSet::subset_of(const ValueSet& other) const {
    return std::all_of(elems_.begin(), elems_.end(),
                       [&](const Value& v) { return other.contains(v); });
}

ValueSet ValueSet::set_union(const ValueSet& a, const ValueSet& b) {
    std::vector<Value> all = a.elems_;
    all.insert(all.end(), b.elems_.begin(), b.elems_.end());
    return from_values(std::move(all));
}

ValueSet ValueSet::cartesian_product(const ValueSet& a, const ValueSet& b) {
    std::vector<Value> out;
    out.reserve(a.size() * b.size());
    for (const auto& x : a.elems_) {
        for (const auto& y : b.elems_) {
            Value t = x;
            t.insert(t.end(), y.begin(), y.end());
            out.push_back(std::move(t));
        }
    }
    return from_values(std::move(out));
}

std::string ValueSet::to_string() const {
    std::string s = "{";
    for (std::size_t i = 0; i < elems_.size(); ++i) {
        if (i > 0) {
            s += ", ";
        }
        s += value_to_string(elems_[i]);
    }
    s += "}";
    return s;
}

UncertainVariable::UncertainVariable(SpacePtr space, std::vector<Value> values)
    : space_(std::move(space)), values_(std::move(values)) {
    if (!space_) {
        throw std::invalid_argument("UncertainVariable: null sample space");
    }
    if (values_.size() != space_->size()) {
        throw std::invalid_argument("UncertainVariable: value map must be total over the space");
    }
    dim_ = values_.front().size();
    for (const auto& v : values_) {
        if (v.size() != dim_ || dim_ == 0) {
            throw std::invalid_argument("UncertainVariable: values must share one dimensionality");
        }
    }
}

namespace {

void require_shared_space(const UncertainVariable& u, const UncertainVariable& v) {
    if (u.space() != v.space()) {
        throw std::invalid_argument("uncertain variables do not share a sample space");
    }
}

Value concat_at(std::span<const UncertainVariable> us, std::size_t i) {
    Value t;
    for (const auto& u : us) {
        const Value& v = u.at(i);
        t.insert(t.end(), v.begin(), v.end());
    }
    return t;
}

} // namespace

ValueSet range(const UncertainVariable& u) {
    return ValueSet::from_values(u.values());
}

ValueSet joint_range(const UncertainVariable& u, const UncertainVariable& v) {
    require_shared_space(u, v);
    const UncertainVariable us[] = {u, v};
    return joint_range(std::span<const UncertainVariable>(us, 2));
}

ValueSet joint_range(std::span<const UncertainVariable> us) {
    if (us.empty()) {
        throw std::invalid_argument("joint_range: empty variable list");
    }
    for (const auto& u : us) {
        require_shared_space(us.front(), u);
    }
    const std::size_t n = us.front().space()->size();
    std::vector<Value> tuples;
    tuples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        tuples.push_back(concat_at(us, i));
    }
    return ValueSet::from_values(std::move(tuples));
}

ValueSet conditional_range(const UncertainVariable& u, const UncertainVariable& v,
                           const Value& v_obs) {
    require_shared_space(u, v);
    std::vector<Value> hits;
    bool observed = false;
    const std::size_t n = u.space()->size();
    for (std::size_t i = 0; i < n; ++i) {
        if (v.at(i) == v_obs) {
            observed = true;
            hits.push_back(u.at(i));
        }
    }
    if (!observed) {
        throw std::domain_error("unobservable value: " + value_to_string(v_obs) +
                                " is outside the range of the conditioning variable");
    }
    return ValueSet::from_values(std::move(hits));
}

ValueSet bayes_posterior(const ValueSet& prior,
                         const std::function<ValueSet(const Value&)>& likelihood,
                         const Value& y_obs) {
    std::vector<Value> kept;
    for (const auto& x : prior) {
        if (likelihood(x).contains(y_obs)) {
            kept.push_back(x);
        }
    }
    return ValueSet::from_values(std::move(kept));
}

bool check_unrelated(std::span<const UncertainVariable> us) {
    if (us.size() < 2) {
        throw std::invalid_argument("check_unrelated: needs at least two variables");
    }
    // The joint range is always a subset of the product of marginals, so
    // equality holds iff the cardinalities match.
    const ValueSet joint = joint_range(us);
    std::size_t product_size = 1;
    for (const auto& u : us) {
        product_size *= range(u).size();
    }
    return joint.size() == product_size;
}

bool check_unrelated(const UncertainVariable& u, const UncertainVariable& v) {
    const UncertainVariable us[] = {u, v};
    return check_unrelated(std::span<const UncertainVariable>(us, 2));
}

bool check_conditionally_unrelated(std::span<const UncertainVariable> us,
                                   const UncertainVariable& given) {
    if (us.size() < 2) {
        throw std::invalid_argument("check_conditionally_unrelated: needs at least two variables");
    }
    for (const auto& u : us) {
        require_shared_space(given, u);
    }
    const std::size_t n = given.space()->size();
    for (const Value& g : range(given)) {
        std::vector<Value> joint_tuples;
        std::size_t product_size = 1;
        for (std::size_t vi = 0; vi < us.size(); ++vi) {
            std::vector<Value> cond;
            for (std::size_t i = 0; i < n; ++i) {
                if (given.at(i) == g) {
                    cond.push_back(us[vi].at(i));
                }
            }
            product_size *= ValueSet::from_values(std::move(cond)).size();
        }
        for (std::size_t i = 0; i < n; ++i) {
            if (given.at(i) == g) {
                joint_tuples.push_back(concat_at(us, i));
            }
        }
        if (ValueSet::from_values(std::move(joint_tuples)).size() != product_size) {
            return false;
        }
    }
    return true;
}

ValueSet total_range_union(const UncertainVariable& u, const UncertainVariable& v) {
    require_shared_space(u, v);
    ValueSet acc;
    for (const Value& v_obs : range(v)) {
        acc = ValueSet::set_union(acc, conditional_range(u, v, v_obs));
    }
    return acc;
}

UncertainVariable pushforward(const std::function<Value(const Value&)>& h,
                              const UncertainVariable& u) {
    std::vector<Value> mapped;
    mapped.reserve(u.space()->size());
    for (const auto& v : u.values()) {
        mapped.push_back(h(v));
    }
    return UncertainVariable(u.space(), std::move(mapped));
}

std::string dump_space_json(const std::vector<std::pair<std::string, UncertainVariable>>& vars) {
    std::ostringstream out;
    out << "{\"outcomes\":[";
    if (!vars.empty()) {
        const auto& space = *vars.front().second.space();
        for (std::size_t i = 0; i < space.size(); ++i) {
            if (i > 0) {
                out << ",";
            }
            out << '"' << space.label(i) << '"';
        }
    }
    out << "],\"variables\":[";
    for (std::size_t vi = 0; vi < vars.size(); ++vi) {
        if (vi > 0) {
            out << ",";
        }
        out << "{\"name\":\"" << vars[vi].first << "\",\"values\":[";
        const auto& values = vars[vi].second.values();
        for (std::size_t i = 0; i < values.size(); ++i) {
            if (i > 0) {
                out << ",";
            }
            out << '"' << value_to_string(values[i]) << '"';
        }
        out << "]}";
    }
    out << "]}";
    return out.str();
}

} // namespace smfkit::uvar
