#pragma once

// Textual set descriptions:
//   interval:a..b   ap:start,step,len   geom:g,len   random:n@seed
//   subgroup:d      explicit:{e1,e2,...}

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hypenergy/field.hpp"

namespace hypenergy {

enum class SetKind { Interval, Ap, Geometric, Random, Subgroup, Explicit };

struct SetSpec {
  SetKind kind = SetKind::Explicit;
  /// interval: lo, hi. ap: start, step, length. geom: generator, length.
  /// random: size, seed. subgroup: index d.
  std::int64_t x = 0, y = 0, z = 0;
  std::uint64_t seed = 0;
  std::vector<std::int64_t> elements;

  friend bool operator==(const SetSpec&, const SetSpec&) = default;
};

class SetSpecError : public std::invalid_argument {
 public:
  SetSpecError(const std::string& what, std::size_t position);
  std::size_t position() const noexcept { return position_; }

 private:
  std::size_t position_;
};

/// Throws SetSpecError (with the offending character offset) on bad syntax.
SetSpec parse_set_spec(std::string_view text);
/// Canonical text; parse_set_spec(render(s)) == s.
std::string render(const SetSpec& spec);

/// Builds the set inside F_p. Throws std::invalid_argument when parameters are
/// out of range for p (length above p, d not dividing p - 1, zero generator).
FpSet materialize(const SetSpec& spec, const ContextPtr& ctx);
/// Integer version for the rational-mode routines: intervals, progressions
/// and explicit lists only.
std::vector<std::int64_t> materialize_integers(const SetSpec& spec);

}  // namespace hypenergy
