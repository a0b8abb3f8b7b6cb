#include "smfkit/lemma_suite.hpp"

#include <map>
#include <sstream>

#include "smfkit/rng.hpp"
#include "smfkit/uvar.hpp"

namespace smfkit::uvar {

bool LemmaReport::all_passed() const { return total_failures() == 0; }

int LemmaReport::total_failures() const {
    int n = 0;
    for (const auto& c : checks) {
        n += c.failed;
    }
    return n;
}

std::string LemmaReport::to_text() const {
    std::ostringstream out;
    out << "lemma suite: " << iterations << " iterations\n";
    for (const auto& c : checks) {
        out << "  " << c.name << ": " << c.passed << " passed, " << c.failed << " failed\n";
    }
    out << (all_passed() ? "all checks passed\n" : "FAILURES DETECTED\n");
    return out.str();
}

namespace {

using rng::SplitMix64;

std::int64_t rand_between(SplitMix64& gen, std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(gen.next() % static_cast<std::uint64_t>(hi - lo + 1));
}

Rational rand_grid_value(SplitMix64& gen) {
    // Integer grid in [-3, 3]; halves keep rational (non-integer) values
    // in play without growing denominators.
    if (gen.next() % 4 == 0) {
        return Rational(rand_between(gen, -6, 6), 2);
    }
    return Rational(rand_between(gen, -3, 3));
}

Value rand_value(SplitMix64& gen, std::size_t dim) {
    Value v;
    for (std::size_t i = 0; i < dim; ++i) {
        v.push_back(rand_grid_value(gen));
    }
    return v;
}

struct GeneratedPair {
    SpacePtr space;
    std::vector<Value> u_values;
    std::vector<Value> v_values;
    bool constructed_unrelated = false;
};

// Coupling patterns over small spaces; outcome counts stay within the
// 10^4 cap by a wide margin, so exhaustive scans remain instant.
GeneratedPair generate_pair(SplitMix64& gen) {
    GeneratedPair out;
    const std::size_t dim_u = gen.next() % 4 == 0 ? 2 : 1;
    const std::size_t dim_v = gen.next() % 4 == 0 ? 2 : 1;
    switch (gen.next() % 4) {
    case 0: { // independent: product space, u reads factor 1, v factor 2
        const auto n1 = static_cast<std::size_t>(rand_between(gen, 2, 6));
        const auto n2 = static_cast<std::size_t>(rand_between(gen, 2, 6));
        std::vector<Value> levels_u;
        std::vector<Value> levels_v;
        for (std::size_t i = 0; i < n1; ++i) {
            levels_u.push_back(rand_value(gen, dim_u));
        }
        for (std::size_t j = 0; j < n2; ++j) {
            levels_v.push_back(rand_value(gen, dim_v));
        }
        out.space = SampleSpace::indexed(n1 * n2);
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t j = 0; j < n2; ++j) {
                out.u_values.push_back(levels_u[i]);
                out.v_values.push_back(levels_v[j]);
            }
        }
        out.constructed_unrelated = true;
        break;
    }
    case 1: { // diagonal: shared outcomes, both maps free
        const auto n = static_cast<std::size_t>(rand_between(gen, 2, 6));
        out.space = SampleSpace::indexed(n);
        for (std::size_t i = 0; i < n; ++i) {
            out.u_values.push_back(rand_value(gen, dim_u));
            out.v_values.push_back(rand_value(gen, dim_v));
        }
        break;
    }
    case 2: { // functional: v is a deterministic function of u's value
        const auto n = static_cast<std::size_t>(rand_between(gen, 2, 6));
        out.space = SampleSpace::indexed(n);
        std::map<Value, Value> table;
        for (std::size_t i = 0; i < n; ++i) {
            Value u = rand_value(gen, dim_u);
            auto it = table.find(u);
            if (it == table.end()) {
                it = table.emplace(u, rand_value(gen, dim_v)).first;
            }
            out.u_values.push_back(std::move(u));
            out.v_values.push_back(it->second);
        }
        break;
    }
    default: { // partial overlap: random subset of a product space
        const auto n1 = static_cast<std::size_t>(rand_between(gen, 2, 5));
        const auto n2 = static_cast<std::size_t>(rand_between(gen, 2, 5));
        std::vector<Value> levels_u;
        std::vector<Value> levels_v;
        for (std::size_t i = 0; i < n1; ++i) {
            levels_u.push_back(rand_value(gen, dim_u));
        }
        for (std::size_t j = 0; j < n2; ++j) {
            levels_v.push_back(rand_value(gen, dim_v));
        }
        std::vector<std::pair<std::size_t, std::size_t>> kept;
        for (std::size_t i = 0; i < n1; ++i) {
            for (std::size_t j = 0; j < n2; ++j) {
                if (gen.next() % 3 != 0 || (i == 0 && j == 0)) {
                    kept.emplace_back(i, j);
                }
            }
        }
        if (kept.size() < 2) {
            kept.emplace_back(n1 - 1, n2 - 1);
        }
        out.space = SampleSpace::indexed(kept.size());
        for (const auto& [i, j] : kept) {
            out.u_values.push_back(levels_u[i]);
            out.v_values.push_back(levels_v[j]);
        }
        break;
    }
    }
    return out;
}

std::function<Value(const Value&)> rand_map(SplitMix64& gen) {
    switch (gen.next() % 4) {
    case 0: // identity
        return [](const Value& v) { return v; };
    case 1: // componentwise absolute value (non-injective)
        return [](const Value& v) {
            Value out;
            for (const auto& r : v) {
                out.push_back(r.abs());
            }
            return out;
        };
    case 2: // negate
        return [](const Value& v) {
            Value out;
            for (const auto& r : v) {
                out.push_back(-r);
            }
            return out;
        };
    default: // collapse to first coordinate doubled (non-injective on tuples)
        return [](const Value& v) { return Value{v.front() + v.front()}; };
    }
}

class SuiteRunner {
public:
    explicit SuiteRunner(std::uint64_t seed) : gen_(seed) {}

    LemmaReport run(int iterations) {
        LemmaReport report;
        report.iterations = iterations;
        for (int it = 0; it < iterations; ++it) {
            const GeneratedPair g = generate_pair(gen_);
            const UncertainVariable u(g.space, g.u_values);
            const UncertainVariable v(g.space, g.v_values);

            check(report, "law-of-total-range", u, v, [&] {
                return total_range_union(u, v) == range(u) &&
                       total_range_union(v, u) == range(v);
            });

            check(report, "bayes-equivalence", u, v, [&] {
                const ValueSet prior = range(u);
                const auto likelihood = [&](const Value& x) {
                    return conditional_range(v, u, x);
                };
                for (const Value& y_obs : range(v)) {
                    if (bayes_posterior(prior, likelihood, y_obs) !=
                        conditional_range(u, v, y_obs)) {
                        return false;
                    }
                }
                return true;
            });

            check(report, "posterior-shrinks-prior", u, v, [&] {
                for (const Value& y_obs : range(v)) {
                    if (!conditional_range(u, v, y_obs).subset_of(range(u))) {
                        return false;
                    }
                }
                return true;
            });

            check(report, "joint-reconstruction", u, v, [&] {
                ValueSet rebuilt;
                for (const Value& y_obs : range(v)) {
                    rebuilt = ValueSet::set_union(
                        rebuilt, ValueSet::cartesian_product(
                                     conditional_range(u, v, y_obs),
                                     ValueSet::from_values({y_obs})));
                }
                return rebuilt == joint_range(u, v);
            });

            check(report, "unrelatedness-equivalence", u, v, [&] {
                bool pointwise = true;
                for (const Value& y_obs : range(v)) {
                    if (conditional_range(u, v, y_obs) != range(u)) {
                        pointwise = false;
                        break;
                    }
                }
                if (check_unrelated(u, v) != pointwise) {
                    return false;
                }
                return !g.constructed_unrelated || check_unrelated(u, v);
            });

            check(report, "conditional-unrelatedness-equivalence", u, v, [&] {
                // Third variable on the same space as conditioner.
                std::vector<Value> w_values;
                for (std::size_t i = 0; i < g.space->size(); ++i) {
                    w_values.push_back(rand_value(gen_, 1));
                }
                const UncertainVariable w(g.space, w_values);
                const UncertainVariable us[] = {u, v};
                const bool by_product =
                    check_conditionally_unrelated(std::span<const UncertainVariable>(us, 2), w);
                // Pointwise form: condition jointly on (v, w) and compare
                // with conditioning on w alone.
                const std::size_t n = g.space->size();
                bool pointwise = true;
                for (std::size_t i = 0; i < n && pointwise; ++i) {
                    std::vector<Value> joint_hits;
                    std::vector<Value> w_hits;
                    for (std::size_t j = 0; j < n; ++j) {
                        if (w.at(j) == w.at(i) && v.at(j) == v.at(i)) {
                            joint_hits.push_back(u.at(j));
                        }
                        if (w.at(j) == w.at(i)) {
                            w_hits.push_back(u.at(j));
                        }
                    }
                    pointwise = ValueSet::from_values(std::move(joint_hits)) ==
                                ValueSet::from_values(std::move(w_hits));
                }
                return by_product == pointwise;
            });

            check(report, "pushforward-conditioning", u, v, [&] {
                const auto h = rand_map(gen_);
                const UncertainVariable hu = pushforward(h, u);
                for (const Value& y_obs : range(v)) {
                    std::vector<Value> mapped;
                    for (const Value& x : conditional_range(u, v, y_obs)) {
                        mapped.push_back(h(x));
                    }
                    if (conditional_range(hu, v, y_obs) !=
                        ValueSet::from_values(std::move(mapped))) {
                        return false;
                    }
                }
                return true;
            });

            if (g.constructed_unrelated) {
                check(report, "pushforward-unrelatedness", u, v, [&] {
                    const UncertainVariable hu = pushforward(rand_map(gen_), u);
                    const UncertainVariable hv = pushforward(rand_map(gen_), v);
                    return check_unrelated(hu, hv);
                });
            }
        }
        return report;
    }

private:
    template <typename Fn>
    void check(LemmaReport& report, const std::string& name, const UncertainVariable& u,
               const UncertainVariable& v, Fn&& fn) {
        auto& slot = counts(report, name);
        if (fn()) {
            ++slot.passed;
        } else {
            ++slot.failed;
            report.failure_dumps.push_back(
                "{\"check\":\"" + name + "\",\"space\":" +
                dump_space_json({{"u", u}, {"v", v}}) + "}");
        }
    }

    static LemmaCheckCounts& counts(LemmaReport& report, const std::string& name) {
        for (auto& c : report.checks) {
            if (c.name == name) {
                return c;
            }
        }
        report.checks.push_back({name, 0, 0});
        return report.checks.back();
    }

    SplitMix64 gen_;
};

} // namespace

LemmaReport run_lemma_suite(int iterations, std::uint64_t seed) {
    if (iterations < 1) {
        throw std::invalid_argument("run_lemma_suite: iterations must be positive");
    }
    return SuiteRunner(seed).run(iterations);
}

} // namespace smfkit::uvar
