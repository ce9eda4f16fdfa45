#include "wquant/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "wquant/errors.hpp"

namespace wquant {

Interval::Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi)) {
        throw ParameterOutOfRange("interval requires lo < hi, got [" + std::to_string(lo) + ", " +
                                  std::to_string(hi) + "]");
    }
}

bool Interval::finite() const { return std::isfinite(lo) && std::isfinite(hi); }

Tolerance::Tolerance(double rel_, double abs_, int max_subdivisions_)
    : rel(rel_), abs(abs_), max_subdivisions(max_subdivisions_) {
    validate();
}

void Tolerance::validate() const {
    if (!(rel >= 1e-14)) {
        throw ParameterOutOfRange("relative tolerance below 1e-14 is not resolvable in double precision");
    }
    if (!(abs >= 0.0)) throw ParameterOutOfRange("absolute tolerance must be >= 0");
    if (max_subdivisions < 1) throw ParameterOutOfRange("max_subdivisions must be positive");
}

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// 15-point Kronrod extension of the 7-point Gauss-Legendre rule.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
// Gauss weights for kXgk[1], kXgk[3], kXgk[5], kXgk[7].
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
    double a;
    double b;
    double value;
    double error;
    int segment;
    bool settled;  // error at rounding level, no point refining
};

double checked(double v, double x) {
    if (!std::isfinite(v)) {
        throw DomainError("integrand is not finite at x = " + std::to_string(x));
    }
    return v;
}

// A finite-parameter view of one piece of the integration domain.
struct Segment {
    double lo;
    double hi;
    int kind;  // 0: finite, 1: [lo, inf), 2: (-inf, hi]

    // Unbounded pieces are parametrized by s = 1 - t in (0, 1], x = lo + L(1 - s)/s,
    // so the far tail keeps full floating-point resolution as s -> 0. L = max(1, |lo|)
    // keeps the mass of a tail starting far out away from s ~ 1/|lo|.
    double eval(const RealFn& f, double t) const {
        switch (kind) {
            case 1: {
                const double L = std::max(1.0, std::abs(lo));
                const double x = lo + L * ((1.0 - t) / t);
                const double v = f(x);
                return v == 0.0 ? 0.0 : checked(v, x) * L / t / t;
            }
            case 2: {
                const double L = std::max(1.0, std::abs(hi));
                const double x = hi - L * ((1.0 - t) / t);
                const double v = f(x);
                return v == 0.0 ? 0.0 : checked(v, x) * L / t / t;
            }
            default:
                return checked(f(t), t);
        }
    }
    double t_lo() const { return kind == 0 ? lo : 0.0; }
    double t_hi() const { return kind == 0 ? hi : 1.0; }
};

Panel gauss_kronrod(const RealFn& f, const Segment& seg, int segment, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    const double fc = seg.eval(f, c);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    double resabs = std::abs(kronrod);
    for (int j = 0; j < 7; ++j) {
        const double dx = h * kXgk[j];
        const double f1 = seg.eval(f, c - dx);
        const double f2 = seg.eval(f, c + dx);
        kronrod += kWgk[j] * (f1 + f2);
        resabs += kWgk[j] * (std::abs(f1) + std::abs(f2));
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    kronrod *= h;
    gauss *= h;
    resabs *= std::abs(h);
    const double err = std::abs(kronrod - gauss);
    return {a, b, kronrod, err, segment, err <= 50.0 * kEps * resabs};
}

std::vector<Segment> split_domain(Interval iv, std::span<const double> breakpoints) {
    std::vector<double> cuts;
    for (double p : breakpoints) {
        if (std::isfinite(p) && p > iv.lo && p < iv.hi) cuts.push_back(p);
    }
    if (std::isinf(iv.lo) && std::isinf(iv.hi) && cuts.empty()) cuts.push_back(0.0);
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    std::vector<double> pts;
    pts.push_back(iv.lo);
    pts.insert(pts.end(), cuts.begin(), cuts.end());
    pts.push_back(iv.hi);

    std::vector<Segment> segs;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double a = pts[i];
        const double b = pts[i + 1];
        if (std::isinf(a) && std::isinf(b)) {
            throw ParameterOutOfRange("doubly infinite segment");
        }
        if (std::isinf(b)) {
            segs.push_back({a, b, 1});
        } else if (std::isinf(a)) {
            segs.push_back({a, b, 2});
        } else {
            segs.push_back({a, b, 0});
        }
    }
    return segs;
}

}  // namespace

IntegrationResult integrate(const RealFn& f, Interval iv, const Tolerance& tol) {
    return integrate(f, iv, std::span<const double>{}, tol);
}

IntegrationResult integrate(const RealFn& f, Interval iv, std::span<const double> breakpoints,
                            const Tolerance& tol) {
    tol.validate();
    const auto segs = split_domain(iv, breakpoints);

    auto by_error = [](const Panel& x, const Panel& y) { return x.error < y.error; };
    std::vector<Panel> heap;
    double settled_value = 0.0;
    double settled_error = 0.0;
    bool roundoff = false;

    for (std::size_t s = 0; s < segs.size(); ++s) {
        heap.push_back(gauss_kronrod(f, segs[s], static_cast<int>(s), segs[s].t_lo(), segs[s].t_hi()));
    }
    std::make_heap(heap.begin(), heap.end(), by_error);

    int panels = static_cast<int>(heap.size());
    for (;;) {
        double value = settled_value;
        double error = settled_error;
        for (const auto& p : heap) {
            value += p.value;
            error += p.error;
        }
        if (!std::isfinite(value) || std::isnan(error)) {
            throw NonConvergence("integrate: non-finite partial sum (integrand divergent)");
        }
        if (error <= std::max(tol.abs, tol.rel * std::abs(value)) || heap.empty()) {
            return {value, error, panels, roundoff};
        }
        std::pop_heap(heap.begin(), heap.end(), by_error);
        Panel worst = heap.back();
        heap.pop_back();
        if (worst.settled) {
            // Largest remaining error is already at rounding level.
            settled_value += worst.value;
            settled_error += worst.error;
            roundoff = true;
            continue;
        }
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            throw NonConvergence("integrate: panel cannot be subdivided further (integrand singular or divergent)");
        }
        if (panels >= tol.max_subdivisions) {
            throw NonConvergence("integrate: subdivision limit " + std::to_string(tol.max_subdivisions) +
                                 " reached with error estimate " + std::to_string(error));
        }
        const Segment& seg = segs[static_cast<std::size_t>(worst.segment)];
        heap.push_back(gauss_kronrod(f, seg, worst.segment, worst.a, mid));
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(gauss_kronrod(f, seg, worst.segment, mid, worst.b));
        std::push_heap(heap.begin(), heap.end(), by_error);
        ++panels;
    }
}

Bracket bracket_root(const RealFn& f, Interval bracket, const Tolerance& tol) {
    tol.validate();
    if (!bracket.finite()) throw ParameterOutOfRange("find_root needs a finite bracket");
    double a = bracket.lo;
    double b = bracket.hi;
    double fa = f(a);
    double fb = f(b);
    if (std::isnan(fa) || std::isnan(fb)) throw DomainError("find_root: NaN at bracket endpoint");
    if (fa == 0.0) return {a, a, fa, fa};
    if (fb == 0.0) return {b, b, fb, fb};
    if ((fa > 0.0) == (fb > 0.0)) {
        throw NoSignChange("find_root: f(" + std::to_string(a) + ") and f(" + std::to_string(b) +
                           ") have the same sign");
    }

    // Brent's zeroin. b is the best estimate, c the contrapoint.
    double c = a;
    double fc = fa;
    double d = b - a;
    double e = d;
    for (int iter = 0; iter < 500; ++iter) {
        if ((fb > 0.0) == (fc > 0.0)) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if (std::abs(fc) < std::abs(fb)) {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        const double tol1 = 2.0 * kEps * std::abs(b) + 0.5 * (tol.rel * std::abs(b) + tol.abs);
        const double m = 0.5 * (c - b);
        if (std::abs(m) <= tol1 || fb == 0.0) {
            return b < c ? Bracket{b, c, fb, fc} : Bracket{c, b, fc, fb};
        }
        if (std::abs(e) >= tol1 && std::abs(fa) > std::abs(fb)) {
            double p;
            double q;
            const double s = fb / fa;
            if (a == c) {
                p = 2.0 * m * s;
                q = 1.0 - s;
            } else {
                const double qq = fa / fc;
                const double r = fb / fc;
                p = s * (2.0 * m * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if (p > 0.0) {
                q = -q;
            } else {
                p = -p;
            }
            if (2.0 * p < std::min(3.0 * m * q - std::abs(tol1 * q), std::abs(e * q))) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += std::abs(d) > tol1 ? d : (m > 0.0 ? tol1 : -tol1);
        fb = f(b);
        if (std::isnan(fb)) throw DomainError("find_root: NaN at x = " + std::to_string(b));
    }
    throw NonConvergence("find_root: iteration cap reached");
}

double find_root(const RealFn& f, Interval bracket, const Tolerance& tol) {
    const Bracket br = bracket_root(f, bracket, tol);
    return std::abs(br.f_lo) <= std::abs(br.f_hi) ? br.lo : br.hi;
}

namespace {

constexpr double kInvPhi = 0.6180339887498948482;  // 1/phi

Minimum golden(const RealFn& f, double a, double b, const Tolerance& tol) {
    double c = b - kInvPhi * (b - a);
    double d = a + kInvPhi * (b - a);
    double fc = f(c);
    double fd = f(d);
    for (int iter = 0; iter < 2000; ++iter) {
        const double x = fc <= fd ? c : d;
        const double width = b - a;
        if (width <= tol.rel * std::abs(x) + tol.abs || width <= 4.0 * kEps * std::abs(x)) {
            return fc <= fd ? Minimum{c, fc} : Minimum{d, fd};
        }
        if (fc <= fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - kInvPhi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + kInvPhi * (b - a);
            fd = f(d);
        }
    }
    throw NonConvergence("minimize_scalar: iteration cap reached");
}

}  // namespace

Minimum minimize_scalar(const RealFn& f, Interval bracket, const Tolerance& tol) {
    tol.validate();
    if (!bracket.finite()) throw ParameterOutOfRange("minimize_scalar needs a finite bracket");
    return golden(f, bracket.lo, bracket.hi, tol);
}

Minimum minimize_scalar_scan(const RealFn& f, Interval bracket, const Tolerance& tol, int grid) {
    tol.validate();
    if (!bracket.finite()) throw ParameterOutOfRange("minimize_scalar needs a finite bracket");
    if (grid < 3) throw ParameterOutOfRange("scan grid must have at least 3 points");
    const double h = (bracket.hi - bracket.lo) / grid;
    int best = 0;
    double best_val = kInf;
    for (int k = 0; k < grid; ++k) {
        const double v = f(bracket.lo + (k + 0.5) * h);
        if (v < best_val) {
            best_val = v;
            best = k;
        }
    }
    const double a = bracket.lo + std::max(0, best - 1) * h + (best == 0 ? 0.0 : 0.5 * h);
    const double b = bracket.lo + std::min(grid, best + 1) * h + (best == grid - 1 ? 0.0 : 0.5 * h);
    Minimum m = golden(f, a, b, tol);
    if (best_val < m.value) m = {bracket.lo + (best + 0.5) * h, best_val};
    return m;
}

namespace {

// Maps a parameter t in [t_min, t_max] onto the interval.
struct SupMap {
    Interval iv;
    int kind;  // 0 finite, 1 [lo,inf), 2 (-inf,hi], 3 real line

    explicit SupMap(Interval i) : iv(i) {
        if (iv.finite()) {
            kind = 0;
        } else if (std::isfinite(iv.lo)) {
            kind = 1;
        } else if (std::isfinite(iv.hi)) {
            kind = 2;
        } else {
            kind = 3;
        }
    }
    double x(double t) const {
        switch (kind) {
            case 0: return iv.lo + t * (iv.hi - iv.lo);
            case 1: return iv.lo + t / (1.0 - t);
            case 2: return iv.hi - t / (1.0 - t);
            default: return t / (1.0 - std::abs(t));
        }
    }
    double t_min() const { return kind == 3 ? -1.0 : 0.0; }
    double t_max() const { return 1.0; }
    // Grid points; open ends are excluded.
    double grid(int k, int n) const {
        switch (kind) {
            case 0: return static_cast<double>(k) / (n - 1);
            case 3: return -1.0 + 2.0 * (k + 1) / (n + 1);
            default: return static_cast<double>(k) / n;
        }
    }
};

}  // namespace

SupResult sup_with_location(const RealFn& f, Interval iv, const Tolerance& tol, int grid) {
    tol.validate();
    if (grid < 3) throw ParameterOutOfRange("sup_on grid must have at least 3 points");
    const SupMap map(iv);
    auto sample = [&](double t) {
        const double x = map.x(t);
        const double v = f(x);
        if (!std::isfinite(v)) {
            throw DomainError("sup_on: non-finite sample at x = " + std::to_string(x));
        }
        return v;
    };
    int best = 0;
    double best_val = -kInf;
    for (int k = 0; k < grid; ++k) {
        const double v = sample(map.grid(k, grid));
        if (v > best_val) {
            best_val = v;
            best = k;
        }
    }
    const double t_best = map.grid(best, grid);
    const double a = best > 0 ? map.grid(best - 1, grid) : map.t_min();
    const double b = best + 1 < grid ? map.grid(best + 1, grid) : map.t_max();

    SupResult out{best_val, map.x(t_best)};
    if (b > a) {
        const Tolerance refine(std::max(1e-13, std::min(tol.rel, 1e-10)), 1e-15);
        const Minimum m = golden([&](double t) { return -sample(t); }, a, b, refine);
        if (-m.value > out.value) out = {-m.value, map.x(m.argmin)};
    }
    return out;
}

double sup_on(const RealFn& f, Interval iv, const Tolerance& tol, int grid) {
    return sup_with_location(f, iv, tol, grid).value;
}

namespace {

double erf_series(double x) {
    // erf(x) = 2/sqrt(pi) * exp(-x^2) * sum_n 2^n x^(2n+1) / (2n+1)!!
    const double x2 = x * x;
    double term = x;
    double sum = x;
    for (int n = 1; n < 200; ++n) {
        term *= 2.0 * x2 / (2.0 * n + 1.0);
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum)) break;
    }
    return 2.0 / std::sqrt(std::numbers::pi) * std::exp(-x2) * sum;
}

// erfc for x > 0 via the continued fraction
// erfc(x) = exp(-x^2)/sqrt(pi) * 1/(x + (1/2)/(x + 1/(x + (3/2)/(x + ...)))),
// evaluated with the modified Lentz algorithm.
double erfc_cf(double x) {
    constexpr double tiny = 1e-300;
    double fval = x;
    double c = x;
    double d = 0.0;
    for (int k = 1; k < 5000; ++k) {
        const double ak = 0.5 * k;
        d = x + ak * d;
        if (std::abs(d) < tiny) d = tiny;
        c = x + ak / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = c * d;
        fval *= delta;
        if (std::abs(delta - 1.0) < 1e-16) break;
    }
    return std::exp(-x * x) / (std::sqrt(std::numbers::pi) * fval);
}

constexpr double kErfSwitch = 3.0;
// Below this, 1 - erf(x) keeps full relative precision for erfc.
constexpr double kErfcSwitch = 2.0;

}  // namespace

double erf(double x) {
    if (std::isnan(x)) return x;
    if (x == 0.0) return x;
    const double ax = std::abs(x);
    double v;
    if (ax <= kErfSwitch) {
        v = erf_series(ax);
    } else if (ax > 6.0) {
        v = 1.0;
    } else {
        v = 1.0 - erfc_cf(ax);
    }
    return x < 0.0 ? -v : v;
}

double erfc(double x) {
    if (std::isnan(x)) return x;
    if (x > kErfcSwitch) return x > 27.3 ? 0.0 : erfc_cf(x);
    if (x < -kErfcSwitch) return 2.0 - (x < -27.3 ? 0.0 : erfc_cf(-x));
    return 1.0 - erf(x);
}

double log_gamma(double x) {
    if (!(x > 0.0)) throw DomainError("log_gamma requires x > 0");
    static constexpr std::array<double, 9> p = {
        0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
        771.32342877765313,      -176.61502916214059,   12.507343278686905,
        -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};
    if (x < 0.5) {
        // Reflection keeps the small-argument branch accurate.
        return std::log(std::numbers::pi / std::sin(std::numbers::pi * x)) - log_gamma(1.0 - x);
    }
    const double z = x - 1.0;
    double a = p[0];
    const double t = z + 7.5;
    for (int i = 1; i < 9; ++i) a += p[static_cast<std::size_t>(i)] / (z + i);
    return 0.5 * std::log(2.0 * std::numbers::pi) + (z + 0.5) * std::log(t) - t + std::log(a);
}

double log_log_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw ParameterOutOfRange("log_log_slope needs two equally sized series of length >= 2");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace wquant
