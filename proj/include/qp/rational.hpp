#pragma once

#include <gmpxx.h>
#include <string>

namespace qp {

// Exact arbitrary-precision rationals. No floating point anywhere in the
// symbolic layer.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
    Rat r(num, den);
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rat& r) { return r.get_str(); }

} // namespace qp
