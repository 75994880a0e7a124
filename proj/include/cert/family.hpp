#pragma once

#include <string>

#include "cert/state_model.hpp"

namespace cert {

/// Key-value state-family spec, e.g.
///   "family flip; c 0.1"
///   "family coset; eps 0.2; subgroup 10"  (repeat `subgroup` per row)
///   "family pure" | "family flipall"
/// Pairs are separated by ';' or newlines.
struct FamilySpec {
    std::string name;
    double c = 0.0;    // flip weight / coset eps
    BitMatrix subgroup_rows;

    static FamilySpec parse(const std::string& text);

    StabilizerMixture build(const StabilizerTableau& psi0) const;
};

}  // namespace cert
