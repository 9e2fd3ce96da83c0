#include "crackpert/quadrature.hpp"

#include "crackpert/core_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace crackpert::quadrature {

namespace {

// Kronrod abscissae and weights (QUADPACK qk15); odd entries are the Gauss nodes.
constexpr std::array<double, 8> xgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> wgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> wg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double tiny = std::numeric_limits<double>::min();

/// Maps u in [0, 1] (power map) or u = x (identity) to x, with Jacobian.
struct Map {
    enum class Kind { identity, from_lo, from_hi } kind = Kind::identity;
    double anchor = 0.0;
    double length = 1.0;
    double power = 1.0;

    double x(double u) const
    {
        switch (kind) {
        case Kind::identity: return u;
        case Kind::from_lo: return anchor + length * std::pow(u, power);
        case Kind::from_hi: return anchor - length * std::pow(u, power);
        }
        return u;
    }
    double jacobian(double u) const
    {
        if (kind == Kind::identity) return 1.0;
        return length * power * std::pow(u, power - 1.0);
    }
    double u(double x) const
    {
        switch (kind) {
        case Kind::identity: return x;
        case Kind::from_lo: return std::pow((x - anchor) / length, 1.0 / power);
        case Kind::from_hi: return std::pow((anchor - x) / length, 1.0 / power);
        }
        return x;
    }
};

struct Panel {
    double u0 = 0.0;
    double u1 = 0.0;
    const Map* map = nullptr;
    double value = 0.0;
    double error = 0.0;
    bool finite = true;
};

struct ByError {
    bool operator()(const Panel& l, const Panel& r) const { return l.error < r.error; }
};

void gauss_kronrod(const std::function<double(double)>& f, Panel& p)
{
    const double centr = 0.5 * (p.u0 + p.u1);
    const double hlgth = 0.5 * (p.u1 - p.u0);
    const auto g = [&](double u) { return f(p.map->x(u)) * p.map->jacobian(u); };

    std::array<double, 7> f1{}, f2{};
    const double fc = g(centr);
    double resk = fc * wgk[7];
    double resg = fc * wg[3];
    double resabs = std::abs(resk);
    for (int j = 0; j < 7; ++j) {
        const double dx = hlgth * xgk[j];
        f1[j] = g(centr - dx);
        f2[j] = g(centr + dx);
        const double sum = f1[j] + f2[j];
        resk += wgk[j] * sum;
        resabs += wgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) resg += wg[j / 2] * sum;
    }
    const double reskh = resk * 0.5;
    double resasc = wgk[7] * std::abs(fc - reskh);
    for (int j = 0; j < 7; ++j) resasc += wgk[j] * (std::abs(f1[j] - reskh) + std::abs(f2[j] - reskh));

    const double ah = std::abs(hlgth);
    resk *= hlgth;
    resabs *= ah;
    resasc *= ah;
    double err = std::abs((resk - resg * hlgth));
    if (resasc != 0.0 && err != 0.0) err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    if (resabs > tiny / (50.0 * eps)) err = std::max(50.0 * eps * resabs, err);

    p.value = resk;
    p.error = err;
    p.finite = std::isfinite(resk) && std::isfinite(err);
}

void validate(const Request& r)
{
    if (!r.integrand) throw std::invalid_argument("quadrature: empty integrand");
    if (!(r.lo < r.hi)) throw std::invalid_argument("quadrature: requires lo < hi");
    if (!std::isfinite(r.lo)) throw std::invalid_argument("quadrature: lower limit must be finite");
    if (!(r.abs_tol > 0.0) || !(r.rel_tol > 0.0)) throw std::invalid_argument("quadrature: tolerances must be > 0");
    for (const auto& e : {r.lo_end, r.hi_end})
        if (e.kind == Endpoint::Kind::algebraic && !(e.exponent > -1.0))
            throw std::invalid_argument("quadrature: algebraic exponent must be > -1");
    if (std::isinf(r.hi)) {
        if (!r.decay || !(r.decay->rate > 0.0) || !(r.decay->bound >= 0.0))
            throw std::invalid_argument("quadrature: semi-infinite interval needs a decay declaration");
        if (r.hi_end.kind != Endpoint::Kind::smooth)
            throw std::invalid_argument("quadrature: infinite endpoint cannot carry a singularity hint");
    }
    if (r.oscillation_period && !(*r.oscillation_period > 0.0))
        throw std::invalid_argument("quadrature: oscillation period must be > 0");
}

/// One sub-range with at most one singular endpoint and its own map.
struct Piece {
    double x0 = 0.0;
    double x1 = 0.0;
    Endpoint lo_end;
    Endpoint hi_end;
    Map map;
};

}  // namespace

Result integrate(const Request& request)
{
    validate(request);

    double hi = request.hi;
    double tail = 0.0;
    if (std::isinf(hi)) {
        const Decay d = *request.decay;
        const double target = request.abs_tol / 100.0;
        const double span = std::max(std::log(std::max(d.bound / (d.rate * target), 1.0)) / d.rate, 1.0 / d.rate);
        hi = request.lo + span;
        tail = d.bound * std::exp(-d.rate * span) / d.rate;
    }

    const bool lo_sing = request.lo_end.kind != Endpoint::Kind::smooth;
    const bool hi_sing = request.hi_end.kind != Endpoint::Kind::smooth;

    std::vector<Piece> pieces;
    if (lo_sing && hi_sing) {
        const double mid = 0.5 * (request.lo + hi);
        pieces.push_back({request.lo, mid, request.lo_end, Endpoint::smooth(), {}});
        pieces.push_back({mid, hi, Endpoint::smooth(), request.hi_end, {}});
    } else {
        pieces.push_back({request.lo, hi, request.lo_end, request.hi_end, {}});
    }

    // Panel maps must stay at fixed addresses while panels reference them.
    for (auto& piece : pieces) {
        const double len = piece.x1 - piece.x0;
        if (piece.lo_end.kind == Endpoint::Kind::algebraic)
            piece.map = {Map::Kind::from_lo, piece.x0, len, 1.0 / (1.0 + piece.lo_end.exponent)};
        else if (piece.hi_end.kind == Endpoint::Kind::algebraic)
            piece.map = {Map::Kind::from_hi, piece.x1, len, 1.0 / (1.0 + piece.hi_end.exponent)};
    }

    std::vector<double> osc_points;
    if (request.oscillation_period) {
        const double period = *request.oscillation_period;
        const auto count = static_cast<std::size_t>(std::floor((hi - request.lo) / period));
        const std::size_t cap = request.max_panels / 2;
        for (std::size_t k = 1; k <= std::min(count, cap); ++k) {
            const double x = request.lo + static_cast<double>(k) * period;
            if (x < hi) osc_points.push_back(x);
        }
    }

    std::vector<Panel> initial;
    for (const auto& piece : pieces) {
        std::vector<double> us;
        const auto to_u = [&](double x) { return piece.map.u(x); };
        double ulo = to_u(piece.x0);
        double uhi = to_u(piece.x1);
        if (piece.map.kind == Map::Kind::from_hi) std::swap(ulo, uhi);
        us.push_back(ulo);
        us.push_back(uhi);
        for (double x : osc_points)
            if (x > piece.x0 && x < piece.x1) us.push_back(to_u(x));

        constexpr int max_depth = 52;
        if (piece.lo_end.kind == Endpoint::Kind::logarithmic) {
            const double len = piece.x1 - piece.x0;
            for (int k = 1; k <= max_depth; ++k) {
                const double x = piece.x0 + std::ldexp(len, -k);
                if (x <= piece.x0) break;
                us.push_back(x);
            }
        }
        if (piece.hi_end.kind == Endpoint::Kind::logarithmic) {
            const double len = piece.x1 - piece.x0;
            for (int k = 1; k <= max_depth; ++k) {
                const double x = piece.x1 - std::ldexp(len, -k);
                if (x >= piece.x1) break;
                us.push_back(x);
            }
        }
        std::sort(us.begin(), us.end());
        us.erase(std::unique(us.begin(), us.end()), us.end());
        for (std::size_t k = 0; k + 1 < us.size(); ++k) initial.push_back({us[k], us[k + 1], &piece.map});
    }

    std::priority_queue<Panel, std::vector<Panel>, ByError> active;
    std::vector<Panel> frozen;
    double total = 0.0, total_err = 0.0;
    bool finite = true;
    for (auto& p : initial) {
        gauss_kronrod(request.integrand, p);
        finite = finite && p.finite;
        total += p.value;
        total_err += p.error;
        active.push(p);
    }

    std::size_t panels = initial.size();
    const auto tolerance = [&] { return std::max(request.abs_tol, request.rel_tol * std::abs(total)); };

    while (finite && total_err + tail > tolerance() && panels < request.max_panels && !active.empty()) {
        Panel worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.u0 + worst.u1);
        const double scale = std::max({std::abs(worst.u0), std::abs(worst.u1), 1e-300});
        if (worst.u1 - worst.u0 < 64.0 * eps * scale || mid <= worst.u0 || mid >= worst.u1) {
            frozen.push_back(worst);
            continue;
        }
        Panel left{worst.u0, mid, worst.map}, right{mid, worst.u1, worst.map};
        gauss_kronrod(request.integrand, left);
        gauss_kronrod(request.integrand, right);
        finite = left.finite && right.finite;
        total += left.value + right.value - worst.value;
        total_err += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
        ++panels;
    }

    // Re-sum from scratch to shed the running-sum drift.
    double value = 0.0, err = 0.0;
    for (const auto& p : frozen) {
        value += p.value;
        err += p.error;
    }
    while (!active.empty()) {
        value += active.top().value;
        err += active.top().error;
        active.pop();
    }
    err += tail;

    Result out;
    out.value = value;
    out.error_estimate = err;
    out.panel_count = panels;
    out.converged = finite && err <= std::max(request.abs_tol, request.rel_tol * std::abs(value));
    return out;
}

double integrate_checked(const Request& request, std::string_view what)
{
    const Result r = integrate(request);
    if (!r.converged) {
        std::ostringstream os;
        os << what << ": quadrature did not converge (estimate " << r.value << ", error "
           << r.error_estimate << ", panels " << r.panel_count << " of " << request.max_panels
           << ", interval [" << request.lo << ", " << request.hi << "])";
        throw NumericError(os.str());
    }
    return r.value;
}

double integrate_smooth(const std::function<double(double)>& f, double lo, double hi, std::string_view what,
                        double abs_tol, double rel_tol)
{
    Request r;
    r.integrand = f;
    r.lo = lo;
    r.hi = hi;
    r.abs_tol = abs_tol;
    r.rel_tol = rel_tol;
    return integrate_checked(r, what);
}

}  // namespace crackpert::quadrature
