#include "acyl/lattice.hpp"

#include <cctype>

namespace acyl {

GramLattice hyperbolic_plane() { return gram_from_rows({{0, 1}, {1, 0}}); }

// Positive definite Cartan matrices. E_n is a chain of n-1 nodes with one
// extra node attached to the third.
GramLattice cartan(char type, int n) {
    MatZ g = MatZ::Zero(n, n);
    auto link = [&](int a, int b) { g(a, b) = g(b, a) = -1; };
    for (int i = 0; i < n; ++i) g(i, i) = 2;
    switch (type) {
        case 'A':
            if (n < 1) break;
            for (int i = 0; i + 1 < n; ++i) link(i, i + 1);
            return GramLattice(g);
        case 'D':
            if (n < 4) break;
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
            link(n - 3, n - 1);
            return GramLattice(g);
        case 'E':
            if (n < 6 || n > 8) break;
            for (int i = 0; i + 2 < n; ++i) link(i, i + 1);
            link(2, n - 1);
            return GramLattice(g);
    }
    throw Error(ErrorCode::MalformedInput,
                std::string("no root lattice ") + type + "(" + std::to_string(n) + ")");
}

GramLattice orthogonal_sum(const GramLattice& a, const GramLattice& b) {
    MatZ g = MatZ::Zero(a.rank() + b.rank(), a.rank() + b.rank());
    g.topLeftCorner(a.rank(), a.rank()) = a.gram;
    g.bottomRightCorner(b.rank(), b.rank()) = b.gram;
    return GramLattice(g);
}

GramLattice rescale(const GramLattice& a, long long m) { return GramLattice(a.gram * Int(m)); }

GramLattice k3_lattice() { return standard_lattice("sum(rescale(E8,-1), rescale(E8,-1), U, U, U)"); }

namespace {

MatQ block_sum(const MatQ& a, const MatQ& b) {
    MatQ g = MatQ::Zero(a.rows() + b.rows(), a.rows() + b.rows());
    g.topLeftCorner(a.rows(), a.rows()) = a;
    g.bottomRightCorner(b.rows(), b.rows()) = b;
    return g;
}

MatQ rational_inverse(const MatQ& m) {
    const Eigen::Index n = m.rows();
    MatQ a(n, 2 * n);
    a.leftCols(n) = m;
    a.rightCols(n) = MatQ::Identity(n, n);
    for (Eigen::Index c = 0; c < n; ++c) {
        Eigen::Index p = c;
        while (p < n && a(p, c) == 0) ++p;
        if (p == n) throw Error(ErrorCode::NonIntegralDual, "dual of a degenerate lattice");
        a.row(p).swap(a.row(c));
        a.row(c) /= Rational(a(c, c));
        for (Eigen::Index r = 0; r < n; ++r)
            if (r != c && a(r, c) != 0) a.row(r) -= Rational(a(r, c)) * a.row(c);
    }
    return a.rightCols(n);
}

class ExprParser {
public:
    explicit ExprParser(const std::string& s) : s_(s) {}

    MatQ parse() {
        MatQ m = expr();
        skip();
        if (i_ != s_.size()) fail("unexpected '" + s_.substr(i_) + "'");
        return m;
    }

private:
    const std::string& s_;
    size_t i_ = 0;

    [[noreturn]] void fail(const std::string& why) {
        throw Error(ErrorCode::MalformedInput, "lattice expression: " + why);
    }
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    bool accept(char c) {
        skip();
        if (i_ < s_.size() && s_[i_] == c) {
            ++i_;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c)) fail(std::string("expected '") + c + "'");
    }
    std::string ident() {
        skip();
        size_t b = i_;
        while (i_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (b == i_) fail("expected a constructor name");
        return s_.substr(b, i_ - b);
    }
    long long number() {
        skip();
        size_t b = i_;
        if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
        while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
        if (b == i_ || !std::isdigit(static_cast<unsigned char>(s_[i_ - 1]))) fail("expected an integer");
        return std::stoll(s_.substr(b, i_ - b));
    }
    int small_positive() {
        long long n = number();
        if (n < 1 || n > 64) fail("rank out of range");
        return static_cast<int>(n);
    }

    MatQ expr() {
        const std::string name = ident();
        if (name == "U") return hyperbolic_plane().gram.cast<Rational>();
        if (name == "K3") return k3_lattice().gram.cast<Rational>();
        if (name == "E6" || name == "E7" || name == "E8")
            return cartan('E', name[1] - '0').gram.cast<Rational>();
        if (name == "A" || name == "D" || name == "E") {
            expect('(');
            int n = small_positive();
            expect(')');
            return cartan(name[0], n).gram.cast<Rational>();
        }
        if (name == "diag") {
            expect('(');
            std::vector<long long> d{number()};
            while (accept(',')) d.push_back(number());
            expect(')');
            MatQ g = MatQ::Zero(d.size(), d.size());
            for (size_t k = 0; k < d.size(); ++k) g(k, k) = d[k];
            return g;
        }
        if (name == "dual") {
            expect('(');
            MatQ x = expr();
            expect(')');
            return rational_inverse(x);
        }
        if (name == "rescale") {
            expect('(');
            MatQ x = expr();
            expect(',');
            long long m = number();
            expect(')');
            return x * Rational(m);
        }
        if (name == "sum") {
            expect('(');
            MatQ x = expr();
            while (accept(',')) x = block_sum(x, expr());
            expect(')');
            return x;
        }
        fail("unknown constructor '" + name + "'");
    }
};

}  // namespace

MatQ standard_lattice_rational(const std::string& expr) { return ExprParser(expr).parse(); }

GramLattice standard_lattice(const std::string& expr) {
    MatQ q = standard_lattice_rational(expr);
    MatZ g(q.rows(), q.cols());
    for (Eigen::Index i = 0; i < q.rows(); ++i)
        for (Eigen::Index j = 0; j < q.cols(); ++j) {
            if (boost::multiprecision::denominator(q(i, j)) != 1)
                throw Error(ErrorCode::NonIntegralDual,
                            "'" + expr + "' has entry " + to_string(q(i, j)) + "; rescale the dual");
            g(i, j) = boost::multiprecision::numerator(q(i, j));
        }
    return GramLattice(g);
}

}  // namespace acyl
