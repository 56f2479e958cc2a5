#pragma once

#include <string>
#include <string_view>

#include "flc/families.hpp"

namespace flc {

/// Parameters as {"family": "TLb7", "c": {"c01": "1", "c23": "1"}}; names not
/// given are zero. "c" may also be an array in canonical order. Values are
/// strings ("1/2", "1+i") or integers. Throws ParseError.
ParamC read_params_json(std::string_view text);
std::string write_params_json(const ParamC& c);

/// Structure constants as {"dim": 7, "entries": [{"i": 1, "j": 0, "k": 2, "v": "1"}]}.
Algebra read_algebra_json(std::string_view text);
std::string write_algebra_json(const Algebra& a);

/// Either form above. A raw algebra must have dimension 7 or 8 and match the
/// family template exactly (TemplateMismatch otherwise).
ParamC read_family_input(std::string_view text);

/// {"A0": "1", "A1": "0", "B": ["1", "0", ...]}.
AdaptedTransform read_transform_json(std::string_view text, Family f);
std::string write_transform_json(const AdaptedTransform& t);

}  // namespace flc
