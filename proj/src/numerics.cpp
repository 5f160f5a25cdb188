#include "mvphase/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

namespace mvphase {

void QuadratureSpec::validate() const {
    if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: rel_tol must be > 0");
    if (!(abs_tol > 0.0)) throw std::invalid_argument("QuadratureSpec: abs_tol must be > 0");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadratureSpec: max_subdivisions must be >= 1");
}

// ---------------------------------------------------------------------------
// gamma
// ---------------------------------------------------------------------------

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

// Lanczos coefficients, g = 7.
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,      676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,    12.507343278686905,
    -0.13857109526572012,     9.9843695780195716e-6, 1.5056327351493116e-7,
};

double gamma_positive(double x) {
    // valid for x >= 0.5
    const double z = x - 1.0;
    double acc = kLanczos[0];
    for (std::size_t i = 1; i < kLanczos.size(); ++i) acc += kLanczos[i] / (z + static_cast<double>(i));
    const double t = z + 7.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * acc;
}

}  // namespace

double gamma_fn(double x) {
    if (x <= 0.0 && x == std::floor(x))
        throw std::domain_error("gamma: pole at non-positive integer " + std::to_string(x));
    if (x < 0.5) {
        // reflection: Gamma(x) = pi / (sin(pi x) Gamma(1 - x))
        return kPi / (std::sin(kPi * x) * gamma_positive(1.0 - x));
    }
    return gamma_positive(x);
}

// ---------------------------------------------------------------------------
// adaptive Gauss-Kronrod quadrature
// ---------------------------------------------------------------------------

namespace {

// 15-point Kronrod nodes on [-1, 1] (positive half) and weights; the embedded
// 7-point Gauss rule uses the odd-indexed nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000,
};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714,
};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327,
};

struct PanelResult {
    double integral = 0.0;
    double error = 0.0;
    double resabs = 0.0;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double hlgth = 0.5 * (b - a);

    std::array<double, 8> fv1{};  // f(center - h*x)
    std::array<double, 8> fv2{};  // f(center + h*x)
    const double fc = f(center);
    fv1[7] = fc;
    fv2[7] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = hlgth * kXgk[static_cast<std::size_t>(i)];
        fv1[static_cast<std::size_t>(i)] = f(center - dx);
        fv2[static_cast<std::size_t>(i)] = f(center + dx);
    }

    double resk = kWgk[7] * fc;
    double resg = kWg[3] * fc;
    double resabs = std::abs(resk);
    for (int i = 0; i < 7; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        const double fsum = fv1[iu] + fv2[iu];
        resk += kWgk[iu] * fsum;
        resabs += kWgk[iu] * (std::abs(fv1[iu]) + std::abs(fv2[iu]));
        if (i % 2 == 1) resg += kWg[static_cast<std::size_t>(i / 2)] * fsum;
    }

    const double reskh = resk * 0.5;
    double resasc = kWgk[7] * std::abs(fc - reskh);
    for (int i = 0; i < 7; ++i) {
        const auto iu = static_cast<std::size_t>(i);
        resasc += kWgk[iu] * (std::abs(fv1[iu] - reskh) + std::abs(fv2[iu] - reskh));
    }

    PanelResult r;
    r.integral = resk * hlgth;
    r.resabs = resabs * std::abs(hlgth);
    resasc *= std::abs(hlgth);
    double err = std::abs((resk - resg) * hlgth);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double uflow = std::numeric_limits<double>::min();
    const double eps = std::numeric_limits<double>::epsilon();
    if (r.resabs > uflow / (50.0 * eps)) err = std::max(err, 50.0 * eps * r.resabs);
    r.error = err;
    return r;
}

struct Panel {
    double a, b;
    double integral, error, resabs;
    bool operator<(const Panel& o) const { return error < o.error; }
};

}  // namespace

double integrate_interval(const std::function<double(double)>& f, double a, double b,
                          const QuadratureSpec& spec) {
    spec.validate();
    if (!(a < b)) throw std::invalid_argument("integrate_interval: requires a < b");

    const PanelResult first = gk15(f, a, b);
    std::priority_queue<Panel> heap;
    heap.push({a, b, first.integral, first.error, first.resabs});
    double total = first.integral;
    double total_err = first.error;
    double total_resabs = first.resabs;

    const double eps = std::numeric_limits<double>::epsilon();
    for (int n = 1; n < spec.max_subdivisions; ++n) {
        const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
        if (total_err <= tol) return total;
        // roundoff floor: no further subdivision can help below this
        if (total_err <= 100.0 * eps * total_resabs) return total;

        Panel worst = heap.top();
        heap.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // interval no longer splittable in double precision
            heap.push(worst);
            break;
        }
        const PanelResult left = gk15(f, worst.a, mid);
        const PanelResult right = gk15(f, mid, worst.b);
        total += left.integral + right.integral - worst.integral;
        total_err += left.error + right.error - worst.error;
        total_resabs += left.resabs + right.resabs - worst.resabs;
        heap.push({worst.a, mid, left.integral, left.error, left.resabs});
        heap.push({mid, worst.b, right.integral, right.error, right.resabs});
    }

    const double tol = std::max(spec.abs_tol, spec.rel_tol * std::abs(total));
    if (total_err <= tol || total_err <= 100.0 * eps * total_resabs) return total;
    throw QuadratureToleranceError("integrate_interval: tolerance not met after " +
                                   std::to_string(spec.max_subdivisions) +
                                   " subdivisions (err=" + std::to_string(total_err) + ")");
}

double integrate(const std::function<double(double)>& f, const QuadratureSpec& spec,
                 double decay_hint) {
    spec.validate();
    if (!(decay_hint > 0.0)) throw std::invalid_argument("integrate: decay_hint must be > 0");

    // sample |f| on a grid at the hint scale to locate the peak magnitude
    double peak = 0.0;
    for (int i = -32; i <= 32; ++i) {
        peak = std::max(peak, std::abs(f(decay_hint * 0.25 * static_cast<double>(i))));
    }
    if (peak == 0.0) return 0.0;

    // expand the window until |f| has dropped 40 nats below the peak
    const double floor_val = peak * std::exp(-40.0);
    double half_width = decay_hint;
    while ((std::abs(f(half_width)) > floor_val || std::abs(f(-half_width)) > floor_val) &&
           half_width < 1e6 * decay_hint) {
        half_width *= 2.0;
    }
    return integrate_interval(f, -half_width, half_width, spec);
}

// ---------------------------------------------------------------------------
// root finding
// ---------------------------------------------------------------------------

double find_root(const std::function<double(double)>& f, const Bracket& bracket, double tol) {
    if (!(bracket.lo < bracket.hi))
        throw BracketError("find_root: bracket requires lo < hi");
    if (bracket.f_lo * bracket.f_hi > 0.0)
        throw BracketError("find_root: f(lo) and f(hi) must not share a sign");
    if (!(tol > 0.0)) throw std::invalid_argument("find_root: tol must be > 0");
    if (bracket.f_lo == 0.0) return bracket.lo;
    if (bracket.f_hi == 0.0) return bracket.hi;

    double a = bracket.lo, b = bracket.hi;
    double fa = bracket.f_lo, fb = bracket.f_hi;
    double c = a, fc = fa;
    double d = b - a, e = d;
    const double eps = std::numeric_limits<double>::epsilon();

    for (int iter = 0; iter < 200; ++iter) {
        if (std::abs(fc) < std::abs(fb)) {
            a = b; b = c; c = a;
            fa = fb; fb = fc; fc = fa;
        }
        const double tol1 = 2.0 * eps * std::abs(b) + 0.5 * tol;
        const double xm = 0.5 * (c - b);
        if (std::abs(xm) <= tol1 || fb == 0.0) return b;

        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            // inverse quadratic interpolation (secant when a == c)
            const double s = fb / fa;
            double p, q;
            if (a == c) {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) q = -q;
            p = std::abs(p);
            if (2.0 * p < std::min(3.0 * xm * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }
        a = b;
        fa = fb;
        b += (std::abs(d) > tol1) ? d : (xm > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
    }
    return b;
}

double central_diff(const std::function<double(double)>& f, double x, double h) {
    if (!(h > 0.0)) throw std::invalid_argument("central_diff: h must be > 0");
    return (f(x + h) - f(x - h)) / (2.0 * h);
}

// ---------------------------------------------------------------------------
// depressed cubic
// ---------------------------------------------------------------------------

int solve_depressed_cubic(double c1, double c0, std::array<double, 3>& roots) {
    // x^3 - c1 x - c0 = 0, i.e. t^3 + p t + q with p = -c1, q = -c0
    const double p = -c1;
    const double q = -c0;
    if (p == 0.0 && q == 0.0) {
        roots[0] = 0.0;
        return 1;
    }
    const double disc = -4.0 * p * p * p - 27.0 * q * q;
    if (disc > 0.0) {
        // three real roots, trigonometric form (requires p < 0)
        const double m = 2.0 * std::sqrt(-p / 3.0);
        const double arg = std::clamp(3.0 * q / (p * m), -1.0, 1.0);
        const double phi = std::acos(arg) / 3.0;
        for (int k = 0; k < 3; ++k) {
            roots[static_cast<std::size_t>(k)] =
                m * std::cos(phi - 2.0 * kPi * static_cast<double>(k) / 3.0);
        }
        std::sort(roots.begin(), roots.end());
        return 3;
    }
    // single real root, Cardano
    const double rad = std::sqrt(std::max(0.0, q * q / 4.0 + p * p * p / 27.0));
    const double u = std::cbrt(-q / 2.0 + rad);
    const double v = std::cbrt(-q / 2.0 - rad);
    roots[0] = u + v;
    return 1;
}

}  // namespace mvphase
