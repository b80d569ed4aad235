#include "elastica/specfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "elastica/errors.hpp"

namespace elastica::specfun {
namespace {

constexpr double kPi = std::numbers::pi;

// Power series, used for x <= 1 where no cancellation occurs.
double series_j(int k, double x) {
    if (x == 0.0) return k == 0 ? 1.0 : 0.0;
    const double half = 0.5 * x;
    const double lead = std::exp(k * std::log(half) - std::lgamma(k + 1.0));
    if (lead == 0.0) return 0.0;
    const double q = -half * half;
    double term = 1.0;
    double sum = 1.0;
    for (int m = 1; m < 60; ++m) {
        term *= q / (static_cast<double>(m) * (m + k));
        sum += term;
        if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return lead * sum;
}

// Miller backward recurrence normalized by J_0 + 2 sum J_{2m} = 1.
// Returns J_{k-1}, J_k, J_{k+1} (k >= 1 here).
BesselTriple miller_triple(int k, double x) {
    const int n = std::max(k + 1, static_cast<int>(x) + 1);
    int start = n + static_cast<int>(std::sqrt(160.0 * n)) + 10;
    if (start % 2 != 0) ++start;

    double above = 0.0;  // index j + 1
    double cur = 1.0;    // index j
    double sum = 0.0;
    double saved_prev = 0.0, saved_value = 0.0, saved_next = 0.0;
    const double two_over_x = 2.0 / x;

    auto save = [&](int idx, double v) {
        if (idx == k - 1) saved_prev = v;
        else if (idx == k) saved_value = v;
        else if (idx == k + 1) saved_next = v;
    };

    save(start, cur);
    if (start % 2 == 0) sum += 2.0 * cur;
    for (int j = start; j >= 1; --j) {
        const double below = j * two_over_x * cur - above;  // index j - 1
        above = cur;
        cur = below;
        if (std::abs(cur) > 1e250) {
            constexpr double s = 1e-250;
            cur *= s;
            above *= s;
            sum *= s;
            saved_prev *= s;
            saved_value *= s;
            saved_next *= s;
        }
        const int idx = j - 1;
        save(idx, cur);
        if (idx % 2 == 0) sum += (idx == 0 ? 1.0 : 2.0) * cur;
    }
    const double norm = 1.0 / sum;
    return {saved_prev * norm, saved_value * norm, saved_next * norm};
}

// Hankel asymptotic expansion for J_0 and J_1, valid to full precision for x >= 25.
double hankel_j(int nu, double x) {
    const double mu4 = 4.0 * nu * nu;
    double p = 1.0, q = 0.0;
    double a = 1.0;  // a_j(nu) / x^j
    double last = 1.0;
    for (int j = 1; j < 80; ++j) {
        const double odd = 2.0 * j - 1.0;
        a *= (mu4 - odd * odd) / (8.0 * j * x);
        if (std::abs(a) > last) break;  // series started to diverge
        last = std::abs(a);
        // sign pattern: P gets (-1)^{j/2} for even j, Q gets (-1)^{(j-1)/2} for odd j
        if (j % 2 == 0) {
            p += ((j / 2) % 2 == 0 ? a : -a);
        } else {
            q += (((j - 1) / 2) % 2 == 0 ? a : -a);
        }
        if (std::abs(a) < 1e-18) break;
    }
    const double phase = (0.5 * nu + 0.25) * kPi;
    const double cx = std::cos(x), sx = std::sin(x);
    const double cp = std::cos(phase), sp = std::sin(phase);
    const double cos_chi = cx * cp + sx * sp;
    const double sin_chi = sx * cp - cx * sp;
    return std::sqrt(2.0 / (kPi * x)) * (p * cos_chi - q * sin_chi);
}

// Unchecked evaluation of J_{k-1}, J_k, J_{k+1} for k >= 0, x > 0.
BesselTriple triple_unchecked(int k, double x) {
    if (x == 0.0) {
        return {k == 1 ? 1.0 : 0.0, k == 0 ? 1.0 : 0.0, 0.0};
    }
    if (x <= 1.0) {
        const double jn = series_j(k, x);
        const double jnext = series_j(k + 1, x);
        const double jprev = k == 0 ? -jnext : series_j(k - 1, x);
        return {jprev, jn, jnext};
    }
    if (x >= 25.0 && k + 1 < x) {
        double jm = hankel_j(0, x);
        double jc = hankel_j(1, x);
        if (k == 0) return {-jc, jm, jc};
        // forward recurrence, stable while the order stays below x
        for (int i = 1; i < k; ++i) {
            const double jn = (2.0 * i / x) * jc - jm;
            jm = jc;
            jc = jn;
        }
        const double jnext = (2.0 * k / x) * jc - jm;
        return {jm, jc, jnext};
    }
    if (k == 0) {
        const BesselTriple t = miller_triple(1, x);
        return {-t.value, t.prev, t.value};
    }
    return miller_triple(k, x);
}

void check_bessel_args(int k, double x) {
    if (!(x >= 0.0) || !std::isfinite(x) || x > kMaxBesselArgument) {
        throw RangeError("bessel_j: argument x=" + std::to_string(x) + " outside [0, 1e6]");
    }
    if (k < 0 || k > kMaxBesselOrder) {
        throw RangeError("bessel_j: order k=" + std::to_string(k) + " outside [0, 200]");
    }
}

}  // namespace

BesselTriple bessel_j_triple(int k, double x) {
    check_bessel_args(k, x);
    return triple_unchecked(k, x);
}

double bessel_j(int k, double x) {
    check_bessel_args(k, x);
    if (x == 0.0) return k == 0 ? 1.0 : 0.0;
    if (x <= 1.0) return series_j(k, x);
    return triple_unchecked(k, x).value;
}

double bessel_j_prime(int k, double x) {
    check_bessel_args(k, x);
    return triple_unchecked(k, x).derivative();
}

std::vector<double> bessel_zeros_below(int k, double x_max) {
    if (k < 0 || k > kMaxBesselOrder) {
        throw RangeError("bessel_zeros: order outside [0, 200]");
    }
    x_max = std::min(x_max, kMaxBesselArgument);
    std::vector<double> zeros;
    // All zeros exceed k, and consecutive zeros are more than 2.4 apart.
    constexpr double step = 1.0;
    double lo = k == 0 ? 0.5 : static_cast<double>(k);
    double flo = bessel_j(k, lo);
    auto f = [k](double x) { return bessel_j(k, x); };
    auto df = [k](double x) { return bessel_j_prime(k, x); };
    while (lo < x_max) {
        const double hi = std::min(lo + step, x_max);
        const double fhi = bessel_j(k, hi);
        if (flo == 0.0) {
            zeros.push_back(lo);
        } else if (flo * fhi < 0.0) {
            const double z = find_root_newton(f, df, lo, hi, 1e-15 * hi);
            if (z < x_max) zeros.push_back(z);
        }
        lo = hi;
        flo = fhi;
        if (hi >= x_max) break;
    }
    return zeros;
}

std::vector<double> bessel_zeros(int k, int count) {
    if (count < 0 || count > 10000) {
        throw RangeError("bessel_zeros: count must be in [0, 10000]");
    }
    if (k < 0 || k > kMaxBesselOrder) {
        throw RangeError("bessel_zeros: order outside [0, 200]");
    }
    std::vector<double> zeros;
    zeros.reserve(count);
    auto f = [k](double x) { return bessel_j(k, x); };
    auto df = [k](double x) { return bessel_j_prime(k, x); };
    double lo = k == 0 ? 0.5 : static_cast<double>(k);
    double flo = bessel_j(k, lo);
    while (static_cast<int>(zeros.size()) < count) {
        const double hi = lo + 1.0;
        const double fhi = bessel_j(k, hi);
        if (flo * fhi < 0.0) {
            zeros.push_back(find_root_newton(f, df, lo, hi, 1e-15 * hi));
        }
        lo = hi;
        flo = fhi;
    }
    return zeros;
}

double gamma_fn(double x) {
    if (!(x > 0.0) || !std::isfinite(x)) {
        throw ParameterDomainError("gamma_fn: argument must be positive, got " + std::to_string(x));
    }
    if (x > 50.0) {
        throw RangeError("gamma_fn: argument above 50");
    }
    const double twice = 2.0 * x;
    if (twice == std::floor(twice)) {
        const int m = static_cast<int>(twice);
        // Gamma(m/2): walk down to Gamma(1) or Gamma(1/2)
        double value = (m % 2 == 0) ? 1.0 : std::sqrt(kPi);
        for (int j = (m % 2 == 0) ? 2 : 1; j < m; j += 2) value *= 0.5 * j;
        return value;
    }
    if (x < 0.5) return gamma_fn(x + 1.0) / x;
    static constexpr std::array<double, 9> coef = {
        0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
        771.32342877765313,   -176.61502916214059,   12.507343278686905,
        -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};
    constexpr double g = 7.0;
    const double z = x - 1.0;
    double a = coef[0];
    for (std::size_t i = 1; i < coef.size(); ++i) a += coef[i] / (z + static_cast<double>(i));
    const double t = z + g + 0.5;
    return std::sqrt(2.0 * kPi) * std::pow(t, z + 0.5) * std::exp(-t) * a;
}

double find_root(const RealFunction& f, double lo, double hi, double tol) {
    if (lo > hi) std::swap(lo, hi);
    double flo = f(lo);
    double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (!(flo * fhi < 0.0)) {
        throw BracketError("find_root: no sign change on [" + std::to_string(lo) + ", " +
                           std::to_string(hi) + "]");
    }
    int retained_side = 0;
    double width_two_ago = hi - lo;
    double width_one_ago = hi - lo;
    for (int iter = 0; iter < 400 && (hi - lo) > tol; ++iter) {
        double x;
        const bool force_bisect = (hi - lo) > 0.5 * width_two_ago;
        if (force_bisect && iter >= 2) {
            x = 0.5 * (lo + hi);
        } else {
            x = (lo * fhi - hi * flo) / (fhi - flo);
            if (!(x > lo && x < hi)) x = 0.5 * (lo + hi);
        }
        const double fx = f(x);
        width_two_ago = width_one_ago;
        if (fx == 0.0) return x;
        if ((fx < 0.0) == (flo < 0.0)) {
            lo = x;
            flo = fx;
            if (retained_side == -1) fhi *= 0.5;  // Illinois
            retained_side = -1;
        } else {
            hi = x;
            fhi = fx;
            if (retained_side == 1) flo *= 0.5;
            retained_side = 1;
        }
        width_one_ago = hi - lo;
    }
    return std::abs(flo) < std::abs(fhi) ? lo : hi;
}

double find_root_newton(const RealFunction& f, const RealFunction& df, double lo, double hi,
                        double tol) {
    if (lo > hi) std::swap(lo, hi);
    const double flo = f(lo);
    const double fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if (!(flo * fhi < 0.0)) {
        throw BracketError("find_root_newton: no sign change on bracket");
    }
    // orient so that f(neg) < 0 < f(pos)
    double neg = flo < 0.0 ? lo : hi;
    double pos = flo < 0.0 ? hi : lo;
    double x = 0.5 * (lo + hi);
    double dx_old = hi - lo;
    double dx = dx_old;
    double fx = f(x);
    double dfx = df(x);
    for (int iter = 0; iter < 200; ++iter) {
        const bool newton_out = ((x - pos) * dfx - fx) * ((x - neg) * dfx - fx) > 0.0;
        const bool too_slow = std::abs(2.0 * fx) > std::abs(dx_old * dfx);
        dx_old = dx;
        if (newton_out || too_slow) {
            dx = 0.5 * (pos - neg);
            x = neg + dx;
        } else {
            dx = fx / dfx;
            x -= dx;
        }
        if (std::abs(dx) < tol) return x;
        fx = f(x);
        if (fx == 0.0) return x;
        dfx = df(x);
        if (fx < 0.0) neg = x;
        else pos = x;
    }
    return x;
}

}  // namespace elastica::specfun
