#include "cert/family.hpp"

#include <sstream>

#include "cert/errors.hpp"

namespace cert {

FamilySpec FamilySpec::parse(const std::string& text) {
    FamilySpec spec;
    std::string normalized = text;
    for (auto& ch : normalized)
        if (ch == ';')
            ch = '\n';
    std::istringstream in(normalized);
    std::string line;
    while (std::getline(in, line)) {
        std::istringstream ls(line);
        std::string key;
        if (!(ls >> key))
            continue;
        if (key == "family") {
            ls >> spec.name;
        } else if (key == "c" || key == "eps") {
            if (!(ls >> spec.c))
                throw ParseError("family spec: bad value for '" + key + "'");
        } else if (key == "subgroup") {
            std::string bits;
            if (!(ls >> bits))
                throw ParseError("family spec: missing subgroup row");
            spec.subgroup_rows.append_row(BitVec::from_string(bits));
        } else {
            throw ParseError("family spec: unknown key '" + key + "'");
        }
    }
    if (spec.name.empty())
        throw ParseError("family spec: missing 'family' entry");
    return spec;
}

StabilizerMixture FamilySpec::build(const StabilizerTableau& psi0) const {
    if (name == "pure")
        return StabilizerMixture::pure(psi0);
    if (name == "flipall") {
        BitVec all(psi0.num_qubits());
        for (std::size_t i = 0; i < all.size(); ++i)
            all.set(i, true);
        auto m = StabilizerMixture::pure(psi0.with_flipped_generators(all));
        m.family_label = "flipall";
        return m;
    }
    if (name == "flip")
        return generator_flip_family(psi0, c);
    if (name == "coset")
        return coset_deficit_family(psi0, subgroup_rows, c);
    throw ParseError("family spec: unknown family '" + name + "'");
}

}  // namespace cert
