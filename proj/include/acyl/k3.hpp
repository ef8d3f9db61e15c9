#pragma once

#include "acyl/lattice.hpp"

#include <optional>
#include <string>
#include <vector>

namespace acyl {

// rank, signature and discriminant forced on N-perp by a primitive
// embedding of N into the K3 lattice 2E8(-1) + 3U
struct ComplementProfile {
    int rank = 0;
    Signature signature;
    std::vector<Int> disc;
    bool operator==(const ComplementProfile&) const = default;
};

ComplementProfile profile_summary(const LatticeProfile& p);

// throws NotEmbeddable
ComplementProfile complement_profile(const ComplementProfile& n);
ComplementProfile complement_profile(const GramLattice& n);

struct VerificationReport {
    bool profiles_match = false;
    bool isometric = false;  // only with equal Rudakov-Shafarevich certificates
    std::optional<RSCertificate> certificate_lhs, certificate_rhs;
    std::string detail;
};

VerificationReport verify_polarising_decomposition(const GramLattice& n, const std::string& claimed);
VerificationReport verify_profile(const ComplementProfile& expected, const std::string& claimed);

struct E8Extraction {
    ImageLattice image;            // the curve classes modulo the radical
    std::vector<int> generators;   // the 8 curve indices spanning E8(-1)
    MatZ e8_basis;                 // 8 x r, image coordinates
    Complement complement;         // E8(-1)-perp inside the image lattice
};

// Finds 8 curve classes with even, negative definite, unimodular Gram, which
// is E8(-1) by uniqueness of that lattice. Subsets are tried in
// lexicographic order unless one is supplied. Throws NoE8Found.
E8Extraction extract_e8_and_complement(const GramLattice& curves,
                                       const std::optional<std::vector<int>>& subset = std::nullopt);

}  // namespace acyl
