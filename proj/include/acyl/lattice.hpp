#pragma once

#include "acyl/normal_form.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace acyl {

// Symmetric integer Gram matrix; degenerate forms are allowed.
struct GramLattice {
    MatZ gram;

    GramLattice() = default;
    explicit GramLattice(MatZ g);  // throws NotSymmetric

    Eigen::Index rank() const { return gram.rows(); }
    bool operator==(const GramLattice& o) const;
};

GramLattice gram_from_rows(const std::vector<std::vector<long long>>& rows);
MatZ matz(const std::vector<std::vector<long long>>& rows);
VecZ vecz(const std::vector<long long>& v);

GramLattice read_gram(std::istream& in);
GramLattice read_gram_file(const std::string& path);
void write_gram(std::ostream& out, const GramLattice& g);

// Header "n" (square) or "k n", then the entries row by row.
MatZ read_matrix(std::istream& in);
MatZ read_matrix_file(const std::string& path);

struct Signature {
    int pos = 0, zero = 0, neg = 0;
    bool operator==(const Signature&) const = default;
};

struct PElementary {
    long long p = 0;
    int ell = 0;
    bool operator==(const PElementary&) const = default;
};

struct LatticeProfile {
    int rank = 0;
    Signature signature;
    Int det = 0;
    bool even = true;
    std::vector<Int> disc;  // invariant factors > 1, ascending divisibility
    std::optional<PElementary> p_elementary;

    bool operator==(const LatticeProfile&) const = default;
};

Signature signature(const MatZ& gram);
LatticeProfile lattice_profile(const GramLattice& g);
std::vector<Int> invariant_factors(const MatZ& m);  // all nonzero SNF entries

// Standard lattices. The expression grammar is
//   U | K3 | A(n) | D(n) | E6 | E7 | E8 | E(n) | diag(d1,...)
//   | dual(X) | rescale(X, m) | sum(X, Y, ...)
// with optional whitespace. Gram matrices are exact rationals until the end.
GramLattice standard_lattice(const std::string& expr);  // throws NonIntegralDual
MatQ standard_lattice_rational(const std::string& expr);

GramLattice hyperbolic_plane();
GramLattice cartan(char type, int n);  // 'A', 'D', 'E'
GramLattice orthogonal_sum(const GramLattice& a, const GramLattice& b);
GramLattice rescale(const GramLattice& a, long long m);
GramLattice k3_lattice();

bool is_primitive_sublattice(const MatZ& basis);  // throws DependentRows

struct Complement {
    MatZ basis;  // rows, ambient coordinates
    GramLattice induced;
};

// Saturated kernel of gram * B^T; requires a nondegenerate ambient.
Complement orthogonal_complement(const GramLattice& ambient, const MatZ& basis);

struct ImageLattice {
    MatZ proj;   // r x n: generator coordinates -> image coordinates
    MatZ lifts;  // r x n: generator combinations lifting the image basis
    GramLattice induced;
};

// Quotient of the generator lattice by the radical of the form.
ImageLattice image_lattice(const GramLattice& g);

// Unimodular U with entries in [-bound, bound] and U^T g1 U = g2.
std::optional<MatZ> is_isometric_bounded(const GramLattice& g1, const GramLattice& g2, int bound);

// Nonzero v in the box [-bound, bound]^n with v^T g v = value, lexicographic.
std::vector<VecZ> represent(const GramLattice& g, long long value, int bound);

struct RSCertificate {
    long long p = 0;
    int ell = 0;
    int rank = 0;
    Signature signature;
    bool operator==(const RSCertificate&) const = default;
};

// Rudakov-Shafarevich uniqueness hypotheses: even, hyperbolic, p-elementary
// for an odd prime p, rank >= 3.
std::optional<RSCertificate> rudakov_shafarevich_certificate(const GramLattice& g);

bool is_prime(long long p);
MatZ induced_gram(const MatZ& basis, const MatZ& gram);

}  // namespace acyl
