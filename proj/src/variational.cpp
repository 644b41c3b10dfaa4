#include "knotbeta/variational.hpp"

#include <cmath>
#include <stdexcept>

#include "knotbeta/continuation.hpp"
#include "knotbeta/parallel.hpp"
#include "knotbeta/quadrature.hpp"

namespace knotbeta {

namespace {

/// Kernel weight chord^e with the convention-resolved exponent e.
double kernel_exponent(double s, GradientConvention conv) {
    return conv == GradientConvention::Primary ? s - 2.0 : s - 1.0;
}

} // namespace

GradientField gradient_field(const ArcFrame& frame, double s, const VariationalConfig& cfg) {
    if (!(s > 1.0)) throw std::domain_error("gradient_field: requires s > 1");
    const int n = frame.samples();
    const double l = frame.length();
    const double expo = kernel_exponent(s, cfg.convention);

    // y-integral in the offset variable, graded toward the integrable
    // |h|^{s-2} endpoint; both sides of the diagonal explicitly
    const double h_lo = 1e-9 * l;
    const auto nodes = panel_nodes(geometric_edges(h_lo, l / 2.0, cfg.panel_ratio), cfg.gauss);

    GradientField out;
    out.s = s;
    out.convention = cfg.convention;
    out.g.assign(n, Vec3{});

    std::vector<std::vector<Vec3>> plus(nodes.x.size()), minus(nodes.x.size());
    parallel_for(nodes.x.size(), [&](std::size_t k) {
        plus[k] = frame.chord_table(nodes.x[k]);
        minus[k] = frame.chord_table(-nodes.x[k]);
    });
    for (std::size_t k = 0; k < nodes.x.size(); ++k) {
        const double w = nodes.w[k];
        for (int i = 0; i < n; ++i) {
            // chord vector gamma(x)-gamma(y) = -(table value)
            const Vec3 dplus = -1.0 * plus[k][i];
            const Vec3 dminus = -1.0 * minus[k][i];
            out.g[i] += w * (std::pow(norm(dplus), expo) * dplus +
                             std::pow(norm(dminus), expo) * dminus);
        }
    }
    const double pref = 2.0 * s;
    for (Vec3& v : out.g) v *= pref;
    return out;
}

double poisson_bracket(const ArcFrame& frame, double s, double u, const VariationalConfig& cfg) {
    if (!(s > -2.0) || !(u > -2.0)) throw std::domain_error("poisson_bracket: requires s, u > -2");
    const int n = frame.samples();
    const double l = frame.length();
    const double w = l / n;
    const double es = kernel_exponent(s, cfg.convention);
    const double eu = kernel_exponent(u, cfg.convention);

    // det is multilinear, so the (y,z) sums factor per x into two vector sums
    std::vector<double> per_x(n, 0.0);
    parallel_for(n, [&](std::size_t i) {
        Vec3 a{}, b{};
        const Vec3 gi = frame.position(static_cast<int>(i));
        for (int j = 0; j < n; ++j) {
            if (j == static_cast<int>(i)) continue;
            const Vec3 d = gi - frame.position(j);
            const double c = norm(d);
            a += std::pow(c, es) * d;
            b += std::pow(c, eu) * d;
        }
        per_x[i] = det3(frame.derivative(static_cast<int>(i), 1), a, b);
    });
    double acc = 0.0;
    for (double v : per_x) acc += v;
    return -4.0 * s * u / (l * l) * acc * w * w * w;
}

double poisson_bracket_from_gradients(const ArcFrame& frame, double s, double u,
                                      const VariationalConfig& cfg) {
    if (!(s > 1.0) || !(u > 1.0))
        throw std::domain_error("poisson_bracket_from_gradients: requires s, u > 1");
    const GradientField gs = gradient_field(frame, s, cfg);
    const GradientField gu = gradient_field(frame, u, cfg);
    const int n = frame.samples();
    const double l = frame.length();
    double acc = 0.0;
    for (int i = 0; i < n; ++i) acc += det3(frame.derivative(i, 1), gs.g[i], gu.g[i]);
    return -acc * (l / n) / (l * l);
}

double bracket_length_commutation(const ArcFrame& frame, double u, double delta,
                                  const VariationalConfig& cfg) {
    if (!(u > -2.0)) throw std::domain_error("bracket_length_commutation: requires u > -2");
    const double bp = poisson_bracket(frame, -1.0 + delta, u, cfg);
    const double bm = poisson_bracket(frame, -1.0 - delta, u, cfg);
    return delta * (bp - bm) / 2.0;
}

BernsteinResult bernstein_apply(const ArcFrame& frame, double s) {
    if (!(s > 2.0)) throw std::domain_error("bernstein_apply: requires s > 2");
    const int n = frame.samples();
    const double l = frame.length();
    const double wx = l / n;

    // Hessian contraction of chord^s along the unit chord direction:
    // w^T H w = s c^{s-2} + s(s-2) c^{s-2} = s(s-1) c^{s-2}; assembled from
    // the two Hessian pieces rather than the simplified form.
    const double h_lo = 1e-7 * l;
    const auto nodes = panel_nodes(geometric_edges(h_lo, l / 2.0, 1.45), 20);
    std::vector<double> per_node(nodes.x.size(), 0.0);
    parallel_for(nodes.x.size(), [&](std::size_t k) {
        const auto chords = frame.chord_table(nodes.x[k]);
        double row = 0.0;
        for (int i = 0; i < n; ++i) {
            const Vec3 v = -1.0 * chords[i];
            const double c = norm(v);
            const Vec3 w = normalized(v);
            const double quad = dot(w, v) * dot(w, v); // (w . v)^2 = c^2
            row += s * std::pow(c, s - 2.0) * dot(w, w) +
                   s * (s - 2.0) * std::pow(c, s - 4.0) * quad;
        }
        per_node[k] = nodes.w[k] * wx * row;
    });
    double acc = 0.0;
    for (double v : per_node) acc += v;
    // analytic tail below the cutoff: contraction ~ s(s-1) h^{s-2}
    acc += s * (s - 1.0) * l * std::pow(h_lo, s - 1.0) / (s - 1.0);

    BernsteinResult out;
    out.lhs = 2.0 * acc;
    out.rhs = s * (s - 1.0) * beta_direct(frame, s - 2.0);
    return out;
}

double discrete_hessian_contraction(const ArcFrame& frame, int i, int j, double s, double step) {
    if (i == j) throw std::invalid_argument("discrete_hessian_contraction: needs distinct samples");
    const int n = frame.samples();
    const double w2 = (frame.length() / n) * (frame.length() / n);

    std::vector<Vec3> pos(n);
    for (int k = 0; k < n; ++k) pos[k] = frame.position(k);
    const Vec3 w_dir = normalized(pos[i] - pos[j]);

    // fixed-weight discrete functional; displacements at samples i and j only
    auto discrete_sum = [&](double a, double b) {
        std::vector<Vec3> p = pos;
        p[i] += a * w_dir;
        p[j] += -b * w_dir; // w(y,x) = -w(x,y)
        double acc = 0.0;
        for (int x = 0; x < n; ++x)
            for (int y = 0; y < n; ++y) {
                if (x == y) continue;
                acc += std::pow(norm(p[x] - p[y]), s);
            }
        return acc * w2;
    };
    const double mixed = (discrete_sum(step, step) - discrete_sum(step, -step) -
                          discrete_sum(-step, step) + discrete_sum(-step, -step)) /
                         (4.0 * step * step);
    // the only terms depending on both displaced samples are the ordered
    // pairs (i,j) and (j,i), each with weight w2
    return mixed / (2.0 * w2);
}

GelfandShilovResult gelfand_shilov_check(const std::vector<double>& z, double s) {
    const int n = static_cast<int>(z.size());
    if (n < 1) throw std::invalid_argument("gelfand_shilov_check: empty point");
    auto f = [&](const std::vector<double>& p) {
        double acc = 0.0;
        for (double v : p) acc += v * v;
        return acc;
    };
    const double f0 = f(z);
    if (!(f0 > 0.0)) throw std::domain_error("gelfand_shilov_check: requires f(z) > 0");

    const double h = 1e-3 * std::sqrt(std::max(1.0, f0));
    auto fs = [&](const std::vector<double>& p) { return std::pow(f(p), s); };
    double lap = 0.0;
    for (int c = 0; c < n; ++c) {
        std::vector<double> p = z;
        // five-point second derivative in coordinate c
        const double z0 = z[c];
        p[c] = z0 + 2.0 * h;
        const double fpp = fs(p);
        p[c] = z0 + h;
        const double fp = fs(p);
        p[c] = z0;
        const double fc = fs(p);
        p[c] = z0 - h;
        const double fm = fs(p);
        p[c] = z0 - 2.0 * h;
        const double fmm = fs(p);
        lap += (-fpp + 16.0 * fp - 30.0 * fc + 16.0 * fm - fmm) / (12.0 * h * h);
    }
    GelfandShilovResult out;
    out.lhs = 0.25 * lap;
    out.rhs = s * (s - 1.0 + 0.5 * n) * std::pow(f0, s - 1.0);
    return out;
}

} // namespace knotbeta
