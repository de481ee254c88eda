#include "covertlab/roots.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace covertlab {

double find_root(const std::function<double(double)>& f,
                 double lo,
                 double hi,
                 double tol) {
    if (!(tol > 0.0)) {
        throw std::invalid_argument("find_root: tolerance must be positive");
    }
    if (!(lo < hi)) {
        throw std::invalid_argument("find_root: bracket requires lo < hi");
    }
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo > 0.0) == (fhi > 0.0)) {
        std::ostringstream msg;
        msg << "find_root: no sign change in bracket [" << lo << ", " << hi
            << "] (f = " << flo << ", " << fhi << ")";
        throw std::invalid_argument(msg.str());
    }

    // Secant steps accelerate convergence; every other iteration bisects so
    // the bracket width is guaranteed to shrink geometrically.
    for (int it = 0; it < 400 && (hi - lo) > tol; ++it) {
        double mid = 0.5 * (lo + hi);
        if (it % 2 == 0 && std::isfinite(flo) && std::isfinite(fhi) &&
            flo != fhi) {
            const double s = lo - flo * (hi - lo) / (fhi - flo);
            const double guard = 1e-3 * (hi - lo);
            if (s > lo + guard && s < hi - guard) mid = s;
        }
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm > 0.0) == (flo > 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
            fhi = fm;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace covertlab
