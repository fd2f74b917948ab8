#include "ckspace/ck_scalar.hpp"

#include <stdexcept>

namespace ckspace {

namespace {

bool valid_component(int k) { return k == -1 || k == 0 || k == 1; }

}  // namespace

CKSignature::CKSignature(int kappa1, int kappa2) : k1_(kappa1), k2_(kappa2) {
  if (!valid_component(kappa1) || !valid_component(kappa2)) {
    throw std::invalid_argument("CKSignature: components must be in {+1,0,-1}, got (" +
                                std::to_string(kappa1) + "," + std::to_string(kappa2) +
                                ")");
  }
}

const std::array<SpaceInfo, 9>& all_spaces() {
  static const std::array<SpaceInfo, 9> spaces{{
      {"sphere", "deformed sphere S_z^2", CKSignature(1, 1), +1},
      {"hyperbolic", "deformed hyperbolic plane H_z^2", CKSignature(-1, 1), +1},
      {"anti-de-sitter", "deformed anti-de Sitter AdS_z^{1+1}", CKSignature(1, -1), -1},
      {"de-sitter", "deformed de Sitter dS_z^{1+1}", CKSignature(-1, -1), -1},
      {"euclidean", "Euclidean plane E^2", CKSignature(0, 1), +1},
      {"minkowski", "Minkowski plane M^{1+1}", CKSignature(0, -1), -1},
      {"newton-plus", "deformed Newton N^{1+1}(+)", CKSignature(1, 0), +1},
      {"newton-minus", "deformed Newton N^{1+1}(-)", CKSignature(-1, 0), +1},
      {"galilei", "Galilei plane G^{1+1}", CKSignature(0, 0), +1},
  }};
  return spaces;
}

std::optional<SpaceInfo> find_space(std::string_view name) {
  for (const auto& s : all_spaces()) {
    if (s.name == name) return s;
  }
  return std::nullopt;
}

const SpaceInfo& space_of(CKSignature sig) {
  for (const auto& s : all_spaces()) {
    if (s.sig == sig) return s;
  }
  // Every valid signature is in the table.
  throw std::logic_error("space_of: unreachable");
}

}  // namespace ckspace
