#pragma once

#include <vector>

#include "garsia/interval.hpp"
#include "garsia/polynomial.hpp"

namespace garsia {

/// Certified enclosure of one root of an integer polynomial. Boxes produced
/// by isolate_roots are pairwise disjoint and each contains exactly one root.
struct RootEnclosure {
    bool is_real = false;
    Box box;                 // real roots carry an exact zero imaginary part
    int conj_partner = -1;   // index of the complex-conjugate enclosure
    Interval modulus() const { return box.modulus(); }
};

/// Isolates all roots of a squarefree monic integer polynomial with
/// certified, pairwise disjoint boxes of width about 2^-prec.
/// Real roots come from exact Sturm bisection; complex roots from floating
/// approximation followed by an interval-Newton existence and uniqueness
/// proof. Throws PrecisionError if certification fails at this precision.
std::vector<RootEnclosure> isolate_roots(const ZPoly& p, mpfr_prec_t prec);

/// The upper-half-plane complex roots only, as certified boxes with
/// strictly positive imaginary part, sorted by real part. n_pairs must be
/// the exact number of conjugate pairs of p.
std::vector<Box> isolate_complex_pairs(const ZPoly& p, int n_pairs, mpfr_prec_t prec);

/// One contraction pass of the interval Newton operator at the given
/// precision. The returned box still contains every root of p that x
/// contains; when p' is nonzero over x the width shrinks quadratically.
Box newton_contract(const ZPoly& p, const ZPoly& dp, const Box& x, mpfr_prec_t prec);

}  // namespace garsia
