#pragma once

#include <optional>
#include <string>
#include <vector>

#include "flc/classifier.hpp"

namespace flc {

struct WitnessResult {
    enum class Status {
        Found,                       // `transform` maps the first input onto the second
        RequiresAlgebraicExtension,  // every branch needs a root outside Q(i)
        Unresolved,                  // the search ran out of rules or budget
    };
    Status status = Status::Unresolved;
    std::optional<AdaptedTransform> transform;
    /// Radical equations without a Gaussian-rational solution, or the
    /// equations left when the search stopped.
    std::vector<std::string> equations;
};

std::string_view witness_status_name(WitnessResult::Status s) noexcept;

/// Polynomial conditions on (A0, A1, B1, ...) for the reduced transform to
/// map `from` onto `to`: [g e_i, g e_j] = g [e_i, e_j]' for all basis pairs,
/// with g built by the bracket recursion. Monic, deduplicated.
struct TransformEquations {
    MultiPoly::Variables unknowns;  // A0, A1, B1, ..., B3 or B5
    std::vector<MultiPoly> equations;
};
TransformEquations transform_equations(const ParamC& from, const ParamC& to);

/// Searches for an explicit reduced transform taking `from` to `to` by exact
/// elimination over the transform equations. A returned transform is always
/// re-checked with apply_adapted_direct.
/// Throws NotIsomorphic unless the classifier answers Yes.
WitnessResult witness_isomorphism(const Classifier& classifier, const ParamC& from, const ParamC& to);

/// The search alone, without the classifier precondition.
WitnessResult find_transform(const ParamC& from, const ParamC& to);

}  // namespace flc
