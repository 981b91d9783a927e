#pragma once

#include <string>
#include <string_view>

#include "factorforge/instance.hpp"

namespace factorforge {

/**
   Parses an instance document.

   JSON (canonical) when the first non-blank character is '{':
     {"n":int, "edges":[[u,v],...], "m":int?, "g":[int]?, "f":[int]?,
      "f_prime":[int]?, "factor":[id]?, "tree_factor":[id]?, "matching":[id]?}
   Unknown fields are rejected. Otherwise a line format is read: `graph n`
   followed by `edge u v` lines; `#` starts a comment.

   Throws InvalidInput with a line or field location on any defect.
 */
Instance parse_instance(std::string_view text);

/// Canonical JSON, fields in the order listed above, absent optionals
/// omitted. parse_instance(serialize_instance(x)) == x.
std::string serialize_instance(const Instance& instance);

}  // namespace factorforge
