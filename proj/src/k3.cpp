#include "acyl/k3.hpp"

#include <algorithm>

namespace acyl {

ComplementProfile profile_summary(const LatticeProfile& p) {
    return ComplementProfile{p.rank, p.signature, p.disc};
}

ComplementProfile complement_profile(const ComplementProfile& n) {
    if (n.signature.zero != 0) throw Error(ErrorCode::NotEmbeddable, "N is degenerate");
    if (n.rank > 22) throw Error(ErrorCode::NotEmbeddable, "rank exceeds 22");
    if (n.signature.pos > 3 || n.signature.neg > 19)
        throw Error(ErrorCode::NotEmbeddable, "signature does not fit in (3,19)");
    ComplementProfile t;
    t.rank = 22 - n.rank;
    t.signature = Signature{3 - n.signature.pos, 0, 19 - n.signature.neg};
    t.disc = n.disc;
    // the discriminant group of T needs at least as many generators
    if (static_cast<int>(t.disc.size()) > t.rank)
        throw Error(ErrorCode::NotEmbeddable,
                    "discriminant needs " + std::to_string(t.disc.size()) + " generators but rank T is " +
                        std::to_string(t.rank));
    return t;
}

ComplementProfile complement_profile(const GramLattice& n) {
    LatticeProfile p = lattice_profile(n);
    if (!p.even) throw Error(ErrorCode::NotEmbeddable, "N is odd");
    return complement_profile(profile_summary(p));
}

VerificationReport verify_polarising_decomposition(const GramLattice& n, const std::string& claimed) {
    GramLattice c = standard_lattice(claimed);
    VerificationReport r;
    LatticeProfile pn = lattice_profile(n), pc = lattice_profile(c);
    r.profiles_match = pn == pc;
    r.certificate_lhs = rudakov_shafarevich_certificate(n);
    r.certificate_rhs = rudakov_shafarevich_certificate(c);
    if (!r.profiles_match) {
        r.detail = "profiles differ";
        if (pn.rank != pc.rank) r.detail += " (rank)";
        else if (!(pn.signature == pc.signature)) r.detail += " (signature)";
        else if (pn.disc != pc.disc) r.detail += " (discriminant)";
        else r.detail += " (parity or determinant)";
    } else if (r.certificate_lhs && r.certificate_rhs && *r.certificate_lhs == *r.certificate_rhs) {
        r.isometric = true;
        r.detail = "isometric: equal Rudakov-Shafarevich certificates";
    } else {
        r.detail = "profiles match; no isometry claimed";
    }
    return r;
}

VerificationReport verify_profile(const ComplementProfile& expected, const std::string& claimed) {
    VerificationReport r;
    LatticeProfile pc = lattice_profile(standard_lattice(claimed));
    r.profiles_match = profile_summary(pc) == expected;
    r.detail = r.profiles_match ? "profiles match; no isometry claimed" : "profiles differ";
    return r;
}

namespace {

bool is_e8_minus(const MatZ& g) {
    for (Eigen::Index i = 0; i < g.rows(); ++i)
        if (g(i, i) % 2 != 0) return false;
    if (determinant(g) != 1) return false;
    Signature s = signature(g);
    return s.neg == 8;
}

MatZ sub_gram(const MatZ& g, const std::vector<int>& idx) {
    const Eigen::Index k = static_cast<Eigen::Index>(idx.size());
    MatZ s(k, k);
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) s(i, j) = g(idx[i], idx[j]);
    return s;
}

}  // namespace

E8Extraction extract_e8_and_complement(const GramLattice& curves,
                                       const std::optional<std::vector<int>>& subset) {
    if (curves.rank() > 22) throw Error(ErrorCode::NotEmbeddable, "more than 22 curve classes");
    E8Extraction out;
    out.image = image_lattice(curves);
    const int n = static_cast<int>(curves.rank());

    if (subset) {
        if (subset->size() != 8) throw Error(ErrorCode::NoE8Found, "subset must have 8 indices");
        for (int i : *subset)
            if (i < 0 || i >= n) throw Error(ErrorCode::NoE8Found, "index out of range");
        if (!is_e8_minus(sub_gram(curves.gram, *subset)))
            throw Error(ErrorCode::NoE8Found, "supplied classes do not span E8(-1)");
        out.generators = *subset;
    } else if (n >= 8) {
        std::vector<bool> pick(n, false);
        std::fill(pick.begin(), pick.begin() + 8, true);
        do {
            std::vector<int> idx;
            for (int i = 0; i < n; ++i)
                if (pick[i]) idx.push_back(i);
            if (is_e8_minus(sub_gram(curves.gram, idx))) {
                out.generators = idx;
                break;
            }
        } while (std::prev_permutation(pick.begin(), pick.end()));
    }
    if (out.generators.empty())
        throw Error(ErrorCode::NoE8Found, "no 8 of the " + std::to_string(n) + " classes span E8(-1)");

    out.e8_basis = MatZ(8, out.image.proj.rows());
    for (int i = 0; i < 8; ++i) out.e8_basis.row(i) = out.image.proj.col(out.generators[i]).transpose();
    out.complement = orthogonal_complement(out.image.induced, out.e8_basis);
    return out;
}

}  // namespace acyl
