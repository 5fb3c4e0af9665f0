#pragma once

/*
 * Double-double arithmetic: an unevaluated sum hi + lo of two doubles with
 * |lo| <= ulp(hi)/2, giving roughly 32 significant digits.  Used by the
 * reference oracles so that formula checks are not limited by double
 * rounding.  Error-free transforms are the classical ones (Knuth two-sum,
 * product splitting via fused multiply-add).
 */

#include <cmath>

namespace suslov {

struct DDouble {
    double hi = 0.0;
    double lo = 0.0;

    DDouble() = default;
    DDouble(double h) : hi(h), lo(0.0) {}
    DDouble(double h, double l) : hi(h), lo(l) {}
};

namespace dd_detail {

inline DDouble two_sum(double a, double b) {
    const double s = a + b;
    const double bb = s - a;
    const double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

// Requires |a| >= |b| (or a == 0).
inline DDouble quick_two_sum(double a, double b) {
    const double s = a + b;
    return {s, b - (s - a)};
}

inline DDouble two_prod(double a, double b) {
    const double p = a * b;
    return {p, std::fma(a, b, -p)};
}

}  // namespace dd_detail

inline DDouble operator+(DDouble a, DDouble b) {
    using namespace dd_detail;
    DDouble s = two_sum(a.hi, b.hi);
    DDouble t = two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return quick_two_sum(s.hi, s.lo);
}

inline DDouble operator-(DDouble a) { return {-a.hi, -a.lo}; }

inline DDouble operator-(DDouble a, DDouble b) { return a + (-b); }

inline DDouble operator*(DDouble a, DDouble b) {
    using namespace dd_detail;
    DDouble p = two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return quick_two_sum(p.hi, p.lo);
}

inline DDouble operator/(DDouble a, DDouble b) {
    using namespace dd_detail;
    const double q1 = a.hi / b.hi;
    DDouble r = a - b * DDouble(q1);
    const double q2 = r.hi / b.hi;
    r = r - b * DDouble(q2);
    const double q3 = r.hi / b.hi;
    DDouble q = quick_two_sum(q1, q2);
    return q + DDouble(q3);
}

inline DDouble operator+(DDouble a, double b) { return a + DDouble(b); }
inline DDouble operator+(double a, DDouble b) { return DDouble(a) + b; }
inline DDouble operator-(DDouble a, double b) { return a - DDouble(b); }
inline DDouble operator-(double a, DDouble b) { return DDouble(a) - b; }
inline DDouble operator*(DDouble a, double b) { return a * DDouble(b); }
inline DDouble operator*(double a, DDouble b) { return DDouble(a) * b; }
inline DDouble operator/(DDouble a, double b) { return a / DDouble(b); }
inline DDouble operator/(double a, DDouble b) { return DDouble(a) / b; }

inline bool operator<(DDouble a, DDouble b) {
    return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(DDouble a, DDouble b) { return b < a; }
inline bool operator==(DDouble a, DDouble b) { return a.hi == b.hi && a.lo == b.lo; }

inline double to_double(DDouble a) { return a.hi + a.lo; }

inline DDouble abs(DDouble a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

// One Newton correction on the double estimate recovers full precision.
inline DDouble sqrt(DDouble a) {
    if (a.hi == 0.0 && a.lo == 0.0) return {0.0, 0.0};
    const double x = 1.0 / std::sqrt(a.hi);
    const double ax = a.hi * x;
    DDouble err = a - DDouble(ax) * DDouble(ax);
    return dd_detail::two_sum(ax, err.hi * (x * 0.5));
}

}  // namespace suslov
