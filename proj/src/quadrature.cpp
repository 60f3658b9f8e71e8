#include "subdiff/quadrature.hpp"

#include <cmath>
#include <string>

#include "subdiff/errors.hpp"

namespace subdiff {

namespace {

// G7,K15 nodes/weights on [-1,1] (symmetric; node 0 listed once).
constexpr double kron_nodes[8] = {
    0.0,
    0.207784955007898467600689403773245,
    0.405845151377397166906606412076961,
    0.586087235467691130294144838258730,
    0.741531185599394439863864773280788,
    0.864864423359769072789712788640926,
    0.949107912342758524526189684047851,
    0.991455371120812639206854697526329,
};
constexpr double kron_weights[8] = {
    0.209482141084727828012999174891714,
    0.204432940075298892414161999234649,
    0.190350578064785409913256402421014,
    0.169004726639267902826583426598550,
    0.140653259715525918745189590510238,
    0.104790010322250183839876322541518,
    0.063092092629978553290700663189204,
    0.022935322010529224963732008058970,
};
constexpr double gauss_weights[4] = {
    0.417959183673469387755102040816327,
    0.381830050505118944950369775488975,
    0.279705391489276667901467771423780,
    0.129484966168869693270611432679082,
};

struct PanelResult {
    double integral;
    double error;
};

PanelResult gk15(const std::function<double(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b);
    const double h = 0.5 * (b - a);
    double fv[15];
    fv[7] = f(c);
    for (int i = 1; i < 8; ++i) {
        fv[7 - i] = f(c - h * kron_nodes[i]);
        fv[7 + i] = f(c + h * kron_nodes[i]);
    }
    double ik = kron_weights[0] * fv[7];
    double ig = gauss_weights[0] * fv[7];
    for (int i = 1; i < 8; ++i) {
        const double s = fv[7 - i] + fv[7 + i];
        ik += kron_weights[i] * s;
        if (i % 2 == 0) ig += gauss_weights[i / 2] * s;
    }
    ik *= h;
    ig *= h;
    return {ik, std::abs(ik - ig)};
}

double adapt(const std::function<double(double)>& f, double a, double b, double tol,
             int depth, const QuadratureOptions& opt, double whole_scale) {
    const PanelResult r = gk15(f, a, b);
    const double local_tol =
        std::max({tol, opt.abs_tol, opt.rel_tol * std::abs(r.integral)});
    if (r.error <= local_tol || !std::isfinite(r.integral)) {
        if (!std::isfinite(r.integral))
            throw QuadratureError("integrate: non-finite panel on [" +
                                  std::to_string(a) + "," + std::to_string(b) + "]");
        return r.integral;
    }
    if (depth >= opt.max_depth) {
        // Accept panels whose error is negligible against the whole integral.
        if (r.error <= opt.rel_tol * whole_scale + opt.abs_tol) return r.integral;
        throw QuadratureError("integrate: tolerance unreachable at depth " +
                              std::to_string(depth));
    }
    const double c = 0.5 * (a + b);
    return adapt(f, a, c, 0.5 * tol, depth + 1, opt, whole_scale) +
           adapt(f, c, b, 0.5 * tol, depth + 1, opt, whole_scale);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const QuadratureOptions& opt) {
    if (a == b) return 0.0;
    const PanelResult first = gk15(f, a, b);
    const double scale = std::abs(first.integral) + opt.abs_tol;
    return adapt(f, a, b, opt.rel_tol * scale, 0, opt, scale);
}

double integrate_zero_inf(const std::function<double(double)>& f, double scale,
                          const QuadratureOptions& opt) {
    if (!(scale > 0.0)) throw QuadratureError("integrate_zero_inf: scale must be > 0");
    auto g = [&f, scale](double t) {
        const double one_minus = 1.0 - t;
        const double x = scale * t / one_minus;
        if (!std::isfinite(x)) return 0.0;
        const double jac = scale / (one_minus * one_minus);
        const double v = f(x) * jac;
        return std::isfinite(v) ? v : 0.0;
    };
    return integrate(g, 0.0, 1.0, opt);
}

}  // namespace subdiff
