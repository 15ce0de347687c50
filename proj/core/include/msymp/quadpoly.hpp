#ifndef MSYMP_QUADPOLY_HPP
#define MSYMP_QUADPOLY_HPP

#include <span>
#include <vector>

namespace msymp {

/// Polynomial of total degree <= 2 in the components of a state vector,
/// stored as sparse term lists. All one-form coefficients used by the
/// built-in systems are of this shape, so first and second partial
/// derivatives are available exactly; closure sums then cancel to rounding
/// instead of carrying finite-difference noise.
struct QuadPoly {
    struct LinTerm {
        int j;
        double c;
    };
    /// c * z_j * z_k with j <= k (j == k stores a square).
    struct QuadTerm {
        int j;
        int k;
        double c;
    };

    double constant = 0.0;
    std::vector<LinTerm> lin;
    std::vector<QuadTerm> quad;

    static QuadPoly number(double c);
    /// The monomial z_j.
    static QuadPoly var(int j);
    /// The monomial z_j * z_k.
    static QuadPoly product(int j, int k);

    QuadPoly& add_constant(double c);
    QuadPoly& add_linear(int j, double c);
    QuadPoly& add_product(int j, int k, double c);

    bool empty() const { return constant == 0.0 && lin.empty() && quad.empty(); }

    double eval(std::span<const double> z) const;
    /// dP/dz_m at z.
    double d1(std::span<const double> z, int m) const;
    /// d2P/(dz_m dz_l); independent of z for degree-2 polynomials.
    double d2(int m, int l) const;
};

/// Sum q1 + q2.
QuadPoly operator+(const QuadPoly& a, const QuadPoly& b);

}  // namespace msymp

#endif
