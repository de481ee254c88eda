#include "covertlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace covertlab {

namespace {

// 15-point Kronrod abscissae on [-1, 1] (odd entries are the embedded
// 7-point Gauss nodes) and the matching weights.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Panel {
    double a, b;
    double value;
    double error;
    bool operator<(const Panel& other) const { return error < other.error; }
};

// Transformed integrand: evaluates f on the original coordinate and folds in
// the Jacobian of the domain mapping. Reports the original abscissa on NaN.
struct Mapped {
    const std::function<double(double)>& f;
    int kind;  // 0: identity, 1: [a,inf), 2: (-inf,b], 3: (-inf,inf)
    double a = 0.0, b = 0.0;

    double operator()(double t) const {
        double z, jac;
        switch (kind) {
            case 1: {
                const double om = 1.0 - t;
                z = a + t / om;
                jac = 1.0 / (om * om);
                break;
            }
            case 2: {
                const double om = 1.0 - t;
                z = b - t / om;
                jac = 1.0 / (om * om);
                break;
            }
            case 3: {
                const double om = 1.0 - t * t;
                z = t / om;
                jac = (1.0 + t * t) / (om * om);
                break;
            }
            default:
                z = t;
                jac = 1.0;
        }
        const double fz = f(z);
        if (std::isnan(fz)) {
            std::ostringstream msg;
            msg << "integrate: integrand returned NaN at z = " << z;
            throw std::domain_error(msg.str());
        }
        return fz * jac;
    }
};

Panel gauss_kronrod_15(const Mapped& g, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);

    double fv1[7], fv2[7];
    const double fc = g(c);
    double resg = fc * kWg[3];
    double resk = fc * kWgk[7];
    double resabs = std::abs(resk);

    for (int j = 0; j < 3; ++j) {  // shared Gauss nodes
        const int k = 2 * j + 1;
        const double x = h * kXgk[k];
        const double f1 = g(c - x);
        const double f2 = g(c + x);
        fv1[k] = f1;
        fv2[k] = f2;
        resg += kWg[j] * (f1 + f2);
        resk += kWgk[k] * (f1 + f2);
        resabs += kWgk[k] * (std::abs(f1) + std::abs(f2));
    }
    for (int j = 0; j < 4; ++j) {  // Kronrod-only nodes
        const int k = 2 * j;
        const double x = h * kXgk[k];
        const double f1 = g(c - x);
        const double f2 = g(c + x);
        fv1[k] = f1;
        fv2[k] = f2;
        resk += kWgk[k] * (f1 + f2);
        resabs += kWgk[k] * (std::abs(f1) + std::abs(f2));
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) {
        resasc += kWgk[j] * (std::abs(fv1[j] - reskh) + std::abs(fv2[j] - reskh));
    }

    const double value = resk * h;
    resabs *= std::abs(h);
    resasc *= std::abs(h);
    double err = std::abs((resk - resg) * h);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps)) {
        err = std::max(eps * 50.0 * resabs, err);
    }
    return Panel{a, b, value, err};
}

bool splittable(const Panel& p) {
    const double eps = std::numeric_limits<double>::epsilon();
    const double scale = std::max(std::abs(p.a), std::abs(p.b));
    return (p.b - p.a) > 8.0 * eps * std::max(scale, 1e-300);
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f,
                           Interval domain,
                           const QuadratureOptions& opts) {
    if (!(domain.lower < domain.upper)) {
        throw std::invalid_argument("integrate: domain requires lower < upper");
    }
    if (!(opts.abs_tol > 0.0) || !(opts.rel_tol > 0.0)) {
        throw std::invalid_argument("integrate: tolerances must be positive");
    }

    Mapped g{f, 0, 0.0, 0.0};
    double ta, tb;
    const bool lo_inf = std::isinf(domain.lower);
    const bool hi_inf = std::isinf(domain.upper);
    if (!lo_inf && !hi_inf) {
        g.kind = 0;
        ta = domain.lower;
        tb = domain.upper;
    } else if (!lo_inf) {
        g.kind = 1;
        g.a = domain.lower;
        ta = 0.0;
        tb = 1.0;
    } else if (!hi_inf) {
        g.kind = 2;
        g.b = domain.upper;
        ta = 0.0;
        tb = 1.0;
    } else {
        g.kind = 3;
        ta = -1.0;
        tb = 1.0;
    }

    // A moderately fine initial grid keeps narrow peaks from being missed by
    // the first coarse panels.
    constexpr int kSeedPanels = 16;
    std::priority_queue<Panel> queue;
    double total_value = 0.0;
    double total_error = 0.0;
    double stuck_error = 0.0;
    int intervals = kSeedPanels;
    bool finite = true;

    for (int i = 0; i < kSeedPanels; ++i) {
        const double a = ta + (tb - ta) * i / kSeedPanels;
        const double b = ta + (tb - ta) * (i + 1) / kSeedPanels;
        Panel p = gauss_kronrod_15(g, a, b);
        finite = finite && std::isfinite(p.value) && std::isfinite(p.error);
        total_value += p.value;
        total_error += p.error;
        queue.push(p);
    }

    const auto tolerance = [&] {
        return std::max(opts.abs_tol, opts.rel_tol * std::abs(total_value));
    };

    while (finite && total_error > tolerance() && !queue.empty() &&
           intervals < opts.max_intervals) {
        Panel worst = queue.top();
        queue.pop();
        if (!splittable(worst)) {
            // Roundoff-limited panel: keep its contribution but stop refining.
            stuck_error += worst.error;
            total_error -= worst.error;
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        Panel left = gauss_kronrod_15(g, worst.a, mid);
        Panel right = gauss_kronrod_15(g, mid, worst.b);
        finite = finite && std::isfinite(left.value) &&
                 std::isfinite(left.error) && std::isfinite(right.value) &&
                 std::isfinite(right.error);
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        queue.push(left);
        queue.push(right);
        ++intervals;
    }

    QuadratureResult result;
    result.value = total_value;
    if (!finite) {
        // Overflowing integrand near a singular boundary: no finite estimate.
        result.abs_error_estimate = std::numeric_limits<double>::infinity();
        result.converged = false;
        return result;
    }
    result.abs_error_estimate = total_error + stuck_error;
    result.converged = result.abs_error_estimate <= tolerance();
    return result;
}

QuadratureResult integrate(const std::function<double(double)>& f,
                           Interval domain,
                           double abs_tol,
                           double rel_tol) {
    QuadratureOptions opts;
    opts.abs_tol = abs_tol;
    opts.rel_tol = rel_tol;
    return integrate(f, domain, opts);
}

}  // namespace covertlab
