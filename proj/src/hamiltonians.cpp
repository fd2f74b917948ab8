#include "ckspace/hamiltonians.hpp"

#include <stdexcept>
#include <utility>

namespace ckspace {

std::string_view to_string(Family f) {
  switch (f) {
    case Family::Free:
      return "free";
    case Family::SW:
      return "sw";
    case Family::KC:
      return "kc";
  }
  return "?";
}

std::string_view to_string(Variant v) {
  return v == Variant::Integrable ? "integrable" : "superintegrable";
}

std::string_view to_string(Coords c) { return c == Coords::Beltrami ? "beltrami" : "polar"; }

Family parse_family(std::string_view s) {
  if (s == "free") return Family::Free;
  if (s == "sw") return Family::SW;
  if (s == "kc") return Family::KC;
  throw std::invalid_argument("unknown family '" + std::string(s) + "' (free|sw|kc)");
}

Variant parse_variant(std::string_view s) {
  if (s == "integrable") return Variant::Integrable;
  if (s == "superintegrable") return Variant::Superintegrable;
  throw std::invalid_argument("unknown variant '" + std::string(s) +
                              "' (integrable|superintegrable)");
}

Coords parse_coords(std::string_view s) {
  if (s == "beltrami") return Coords::Beltrami;
  if (s == "polar") return Coords::Polar;
  throw std::invalid_argument("unknown coords '" + std::string(s) + "' (beltrami|polar)");
}

BaseFiberSplit::BaseFiberSplit(HamiltonianSpec spec, SplitRule rule)
    : spec_(std::move(spec)), rule_(rule) {
  if (!spec_.sig.degenerate()) {
    throw DomainError(
        "split_base_fiber: base/fiber split needs a degenerate metric (kappa2 = 0)");
  }
}

}  // namespace ckspace
