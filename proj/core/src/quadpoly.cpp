#include "msymp/quadpoly.hpp"

namespace msymp {

QuadPoly QuadPoly::number(double c) {
    QuadPoly p;
    p.constant = c;
    return p;
}

QuadPoly QuadPoly::var(int j) {
    QuadPoly p;
    p.lin.push_back({j, 1.0});
    return p;
}

QuadPoly QuadPoly::product(int j, int k) {
    QuadPoly p;
    p.add_product(j, k, 1.0);
    return p;
}

QuadPoly& QuadPoly::add_constant(double c) {
    constant += c;
    return *this;
}

QuadPoly& QuadPoly::add_linear(int j, double c) {
    lin.push_back({j, c});
    return *this;
}

QuadPoly& QuadPoly::add_product(int j, int k, double c) {
    if (j > k) {
        int t = j;
        j = k;
        k = t;
    }
    quad.push_back({j, k, c});
    return *this;
}

double QuadPoly::eval(std::span<const double> z) const {
    double s = constant;
    for (const auto& t : lin) s += t.c * z[t.j];
    for (const auto& t : quad) s += t.c * z[t.j] * z[t.k];
    return s;
}

double QuadPoly::d1(std::span<const double> z, int m) const {
    double s = 0.0;
    for (const auto& t : lin)
        if (t.j == m) s += t.c;
    for (const auto& t : quad) {
        if (t.j == m) s += t.c * z[t.k];
        if (t.k == m) s += t.c * z[t.j];
    }
    return s;
}

double QuadPoly::d2(int m, int l) const {
    double s = 0.0;
    for (const auto& t : quad) {
        if (t.j == m && t.k == l) s += t.c;
        if (t.j == l && t.k == m) s += t.c;
    }
    return s;
}

QuadPoly operator+(const QuadPoly& a, const QuadPoly& b) {
    QuadPoly p = a;
    p.constant += b.constant;
    p.lin.insert(p.lin.end(), b.lin.begin(), b.lin.end());
    p.quad.insert(p.quad.end(), b.quad.begin(), b.quad.end());
    return p;
}

}  // namespace msymp
