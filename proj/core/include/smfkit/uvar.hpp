#ifndef SMFKIT_UVAR_HPP
#define SMFKIT_UVAR_HPP

#include <functional>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "smfkit/rational.hpp"

namespace smfkit::uvar {

// A value is an exact scalar (size 1) or an exact tuple. Ordering is
// lexicographic, which std::vector provides.
using Value = std::vector<Rational>;

Value scalar(Rational r);
Value pair_value(Rational a, Rational b);
std::string value_to_string(const Value& v);

// Finite sample space: an ordered list of distinct opaque outcome labels.
// Variables hold a shared_ptr to their space; two variables are comparable
// only when they reference the same object.
class SampleSpace {
public:
    static std::shared_ptr<const SampleSpace> create(std::vector<std::string> outcomes);

    // Convenience: outcomes "o0".."o{n-1}".
    static std::shared_ptr<const SampleSpace> indexed(std::size_t n);

    std::size_t size() const { return outcomes_.size(); }
    const std::string& label(std::size_t i) const { return outcomes_[i]; }
    const std::vector<std::string>& outcomes() const { return outcomes_; }

private:
    explicit SampleSpace(std::vector<std::string> outcomes);
    std::vector<std::string> outcomes_;
};

using SpacePtr = std::shared_ptr<const SampleSpace>;

// Finite set of values of uniform dimension, kept sorted and duplicate-free
// so equality is plain vector equality.
class ValueSet {
public:
    ValueSet() = default;
    static ValueSet from_values(std::vector<Value> values);

    bool contains(const Value& v) const;
    std::size_t size() const { return elems_.size(); }
    bool empty() const { return elems_.empty(); }
    std::size_t dim() const;

    const std::vector<Value>& elements() const { return elems_; }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    friend bool operator==(const ValueSet& a, const ValueSet& b) {
        return a.elems_ == b.elems_;
    }
    friend bool operator!=(const ValueSet& a, const ValueSet& b) { return !(a == b); }

    bool subset_of(const ValueSet& other) const;
    static ValueSet set_union(const ValueSet& a, const ValueSet& b);
    // Elementwise tuple concatenation of every pair.
    static ValueSet cartesian_product(const ValueSet& a, const ValueSet& b);

    std::string to_string() const;

private:
    std::vector<Value> elems_;
};

// Total map from a sample space to values of one dimension.
class UncertainVariable {
public:
    UncertainVariable(SpacePtr space, std::vector<Value> values);

    const SpacePtr& space() const { return space_; }
    std::size_t dim() const { return dim_; }
    const Value& at(std::size_t outcome_index) const { return values_[outcome_index]; }
    const std::vector<Value>& values() const { return values_; }

private:
    SpacePtr space_;
    std::vector<Value> values_;
    std::size_t dim_;
};

// --- core operations -------------------------------------------------------

// { u(w) : w in Omega }, duplicates collapsed.
ValueSet range(const UncertainVariable& u);

// { (u(w), v(w)) : w in Omega } as concatenated tuples.
ValueSet joint_range(const UncertainVariable& u, const UncertainVariable& v);

// Joint range of an arbitrary list of variables on one space.
ValueSet joint_range(std::span<const UncertainVariable> us);

// { u(w) : v(w) = v_obs }. Throws std::domain_error when v_obs is not a
// realizable value of v (conditioning is defined only on realized values).
ValueSet conditional_range(const UncertainVariable& u, const UncertainVariable& v,
                           const Value& v_obs);

// Non-stochastic Bayes step on plain sets: keeps the prior elements whose
// likelihood set meets the observation. An empty result is legal and
// signals an observation inconsistent with the prior/likelihood pair.
ValueSet bayes_posterior(const ValueSet& prior,
                         const std::function<ValueSet(const Value&)>& likelihood,
                         const Value& y_obs);

// True iff the joint range of the list equals the Cartesian product of the
// marginal ranges. Requires at least two variables.
bool check_unrelated(std::span<const UncertainVariable> us);
bool check_unrelated(const UncertainVariable& u, const UncertainVariable& v);

// True iff the product decomposition of the conditional joint range holds
// for every realizable value of `given`.
bool check_conditionally_unrelated(std::span<const UncertainVariable> us,
                                   const UncertainVariable& given);

// Union of conditional ranges of u over all realizable values of v.
// Always equals range(u); kept as a separate computation path so the
// identity stays testable.
ValueSet total_range_union(const UncertainVariable& u, const UncertainVariable& v);

// The variable w -> h(u(w)) on the same space.
UncertainVariable pushforward(const std::function<Value(const Value&)>& h,
                              const UncertainVariable& u);

// JSON dump of a space and named variables on it, for failure reports.
std::string dump_space_json(const std::vector<std::pair<std::string, UncertainVariable>>& vars);

} // namespace smfkit::uvar

#endif
