#include "infogeo/geometry.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <utility>
#include <variant>

#include "infogeo/error.hpp"

namespace infogeo {

SymMatrix2 SymMatrix2::inverse() const {
    const double d = det();
    return {g22 / d, -g12 / d, g11 / d};
}

SymMatrix2 operator*(double s, const SymMatrix2& m) { return {s * m.g11, s * m.g12, s * m.g22}; }

bool is_degenerate(const SymMatrix2& g, double tol) {
    const double scale = std::fabs(g.g11 * g.g22) + g.g12 * g.g12;
    return !(std::fabs(g.det()) > tol * scale);
}

double StepPolicy::step(double coordinate) const { return scale * (offset + std::fabs(coordinate)); }

// ---------------------------------------------------------------------------
// MetricField

namespace {

struct SymbolicMetric {
    std::string var1;
    std::string var2;
    std::array<Expr, 3> g;         // g11, g12, g22
    std::array<Expr, 6> d;         // [l*3 + entry]
    std::array<Expr, 9> dd;        // [pair*3 + entry], pairs (1,1), (1,2), (2,2)

    Bindings bind(const Point2& t) const { return Bindings{{var1, t[0]}, {var2, t[1]}}; }

    static SymMatrix2 eval3(const Expr* e, const Bindings& b) {
        return {evaluate(e[0], b), evaluate(e[1], b), evaluate(e[2], b)};
    }
};

struct GradientMetric {
    std::function<MetricJet(const Point2&)> jet;
};

struct HessianMetric {
    std::function<MetricJet(const Point2&)> jet;
    std::function<MetricHessian(const Point2&)> hessian;
};

struct ValueMetric {
    std::function<SymMatrix2(const Point2&)> values;
    StepPolicy gradient_step;
};

}  // namespace

struct MetricField::Impl {
    std::variant<SymbolicMetric, GradientMetric, HessianMetric, ValueMetric> source;
    StepPolicy christoffel_step;
};

MetricField::MetricField(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

MetricField MetricField::symbolic(const Expr& g11, const Expr& g12, const Expr& g22, std::string var1,
                                  std::string var2, StepPolicy christoffel_step) {
    SymbolicMetric m;
    m.var1 = std::move(var1);
    m.var2 = std::move(var2);
    m.g = {g11, g12, g22};
    const std::array<std::string, 2> vars = {m.var1, m.var2};
    for (int l = 0; l < 2; ++l)
        for (int e = 0; e < 3; ++e) m.d[l * 3 + e] = differentiate(m.g[e], vars[l]);
    for (int e = 0; e < 3; ++e) {
        m.dd[0 * 3 + e] = differentiate(m.d[0 * 3 + e], vars[0]);
        m.dd[1 * 3 + e] = differentiate(m.d[0 * 3 + e], vars[1]);
        m.dd[2 * 3 + e] = differentiate(m.d[1 * 3 + e], vars[1]);
    }
    return MetricField(std::make_shared<const Impl>(Impl{std::move(m), christoffel_step}));
}

MetricField MetricField::from_gradient(std::function<MetricJet(const Point2&)> jet, StepPolicy christoffel_step) {
    return MetricField(std::make_shared<const Impl>(Impl{GradientMetric{std::move(jet)}, christoffel_step}));
}

MetricField MetricField::from_hessian(std::function<MetricJet(const Point2&)> jet,
                                      std::function<MetricHessian(const Point2&)> hessian) {
    return MetricField(
        std::make_shared<const Impl>(Impl{HessianMetric{std::move(jet), std::move(hessian)}, StepPolicy{}}));
}

MetricField MetricField::from_values(std::function<SymMatrix2(const Point2&)> values, StepPolicy gradient_step,
                                     StepPolicy christoffel_step) {
    return MetricField(
        std::make_shared<const Impl>(Impl{ValueMetric{std::move(values), gradient_step}, christoffel_step}));
}

MetricField::Strategy MetricField::strategy() const {
    switch (impl_->source.index()) {
        case 0: return Strategy::symbolic;
        case 1: return Strategy::analytic_gradient;
        case 2: return Strategy::analytic_hessian;
        default: return Strategy::finite_difference;
    }
}

const StepPolicy& MetricField::christoffel_step() const { return impl_->christoffel_step; }

SymMatrix2 MetricField::at(const Point2& theta) const {
    if (const auto* s = std::get_if<SymbolicMetric>(&impl_->source)) return SymbolicMetric::eval3(s->g.data(), s->bind(theta));
    if (const auto* g = std::get_if<GradientMetric>(&impl_->source)) return g->jet(theta).g;
    if (const auto* h = std::get_if<HessianMetric>(&impl_->source)) return h->jet(theta).g;
    return std::get<ValueMetric>(impl_->source).values(theta);
}

MetricJet MetricField::jet(const Point2& theta) const {
    if (const auto* s = std::get_if<SymbolicMetric>(&impl_->source)) {
        const Bindings b = s->bind(theta);
        return {SymbolicMetric::eval3(s->g.data(), b),
                {SymbolicMetric::eval3(s->d.data(), b), SymbolicMetric::eval3(s->d.data() + 3, b)}};
    }
    if (const auto* g = std::get_if<GradientMetric>(&impl_->source)) return g->jet(theta);
    if (const auto* h = std::get_if<HessianMetric>(&impl_->source)) return h->jet(theta);

    const auto& v = std::get<ValueMetric>(impl_->source);
    MetricJet out;
    out.g = v.values(theta);
    // Fourth-order central stencil: (-f(2h) + 8 f(h) - 8 f(-h) + f(-2h)) / 12h.
    for (int l = 0; l < 2; ++l) {
        const double h = v.gradient_step.step(theta[l]);
        auto shifted = [&](double k) {
            Point2 p = theta;
            p[l] += k * h;
            return v.values(p);
        };
        const SymMatrix2 p1 = shifted(1.0);
        const SymMatrix2 m1 = shifted(-1.0);
        const SymMatrix2 p2 = shifted(2.0);
        const SymMatrix2 m2 = shifted(-2.0);
        auto diff = [h](double fp2, double fp1, double fm1, double fm2) {
            return (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h);
        };
        out.d[l] = {diff(p2.g11, p1.g11, m1.g11, m2.g11), diff(p2.g12, p1.g12, m1.g12, m2.g12),
                    diff(p2.g22, p1.g22, m1.g22, m2.g22)};
    }
    return out;
}

std::optional<MetricHessian> MetricField::second_derivatives(const Point2& theta) const {
    if (const auto* h = std::get_if<HessianMetric>(&impl_->source)) return h->hessian(theta);
    const auto* s = std::get_if<SymbolicMetric>(&impl_->source);
    if (s == nullptr) return std::nullopt;
    const Bindings b = s->bind(theta);
    return MetricHessian{SymbolicMetric::eval3(s->dd.data(), b), SymbolicMetric::eval3(s->dd.data() + 3, b),
                         SymbolicMetric::eval3(s->dd.data() + 6, b)};
}

// ---------------------------------------------------------------------------
// Christoffel symbols

namespace {

// T_ljk = d_k g_lj + d_j g_lk - d_l g_jk
double lowered(const MetricJet& jet, int l, int j, int k) {
    return jet.d[k](l, j) + jet.d[j](l, k) - jet.d[l](j, k);
}

void require_nondegenerate(const SymMatrix2& g, const Point2& theta) {
    if (is_degenerate(g)) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "degenerate metric at theta = (" << theta[0] << ", " << theta[1] << "): det = " << g.det();
        throw DegenerateMetricError(msg.str());
    }
}

const MetricHessian::value_type& second(const MetricHessian& h, int a, int b) {
    return h[a + b];  // (0,0)->0, (0,1)/(1,0)->1, (1,1)->2
}

}  // namespace

ChristoffelAt christoffel(const MetricJet& jet) {
    const SymMatrix2 inv = jet.g.inverse();
    ChristoffelAt out;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = j; k < 2; ++k) {
                double sum = 0.0;
                for (int l = 0; l < 2; ++l) sum += inv(i, l) * lowered(jet, l, j, k);
                out(i, j, k) = 0.5 * sum;
                out(i, k, j) = 0.5 * sum;
            }
    return out;
}

ChristoffelAt christoffel(const MetricField& field, const Point2& theta) {
    const MetricJet jet = field.jet(theta);
    require_nondegenerate(jet.g, theta);
    return christoffel(jet);
}

std::array<ChristoffelAt, 2> christoffel_derivatives(const MetricField& field, const Point2& theta) {
    std::array<ChristoffelAt, 2> out{};
    if (auto hess = field.second_derivatives(theta)) {
        const MetricJet jet = field.jet(theta);
        require_nondegenerate(jet.g, theta);
        const SymMatrix2 inv = jet.g.inverse();
        for (int lam = 0; lam < 2; ++lam) {
            // d(g^-1) = -g^-1 (d g) g^-1
            double dinv[2][2];
            for (int a = 0; a < 2; ++a)
                for (int b = 0; b < 2; ++b) {
                    double s = 0.0;
                    for (int p = 0; p < 2; ++p)
                        for (int q = 0; q < 2; ++q) s += inv(a, p) * jet.d[lam](p, q) * inv(q, b);
                    dinv[a][b] = -s;
                }
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j)
                    for (int k = 0; k < 2; ++k) {
                        double sum = 0.0;
                        for (int l = 0; l < 2; ++l) {
                            const double dT = second(*hess, lam, k)(l, j) + second(*hess, lam, j)(l, k) -
                                              second(*hess, lam, l)(j, k);
                            sum += dinv[i][l] * lowered(jet, l, j, k) + inv(i, l) * dT;
                        }
                        out[lam](i, j, k) = 0.5 * sum;
                    }
        }
        return out;
    }

    for (int lam = 0; lam < 2; ++lam) {
        const double h = field.christoffel_step().step(theta[lam]);
        Point2 up = theta;
        Point2 dn = theta;
        up[lam] += h;
        dn[lam] -= h;
        const double width = up[lam] - dn[lam];
        const ChristoffelAt gu = christoffel(field, up);
        const ChristoffelAt gd = christoffel(field, dn);
        for (std::size_t n = 0; n < 8; ++n) out[lam].values[n] = (gu.values[n] - gd.values[n]) / width;
    }
    return out;
}

double scalar_curvature(const MetricField& field, const Point2& theta) {
    const MetricJet jet = field.jet(theta);
    require_nondegenerate(jet.g, theta);
    const SymMatrix2 inv = jet.g.inverse();
    const ChristoffelAt G = christoffel(jet);
    const auto dG = christoffel_derivatives(field, theta);

    double ricci = 0.0;
    for (int mu = 0; mu < 2; ++mu)
        for (int nu = 0; nu < 2; ++nu) {
            double r = 0.0;
            for (int lam = 0; lam < 2; ++lam) {
                r += dG[lam](lam, mu, nu) - dG[nu](lam, mu, lam);
                for (int sig = 0; sig < 2; ++sig)
                    r += G(sig, mu, nu) * G(lam, lam, sig) - G(sig, mu, lam) * G(lam, nu, sig);
            }
            ricci += inv(mu, nu) * r;
        }
    return ricci / 2.0;
}

CurvatureReport ricci_report(const MetricField& field, const Point2& theta) {
    CurvatureReport report;
    report.pipeline = "ricci";
    const SymMatrix2 g = field.at(theta);
    report.payload["det_g"] = g.det();
    report.payload["g11"] = g.g11;
    report.payload["g12"] = g.g12;
    report.payload["g22"] = g.g22;
    if (is_degenerate(g)) {
        report.curvature = std::numeric_limits<double>::quiet_NaN();
        report.classification = Classification::degenerate;
        report.note = "metric is singular at this point";
        return report;
    }
    report.curvature = scalar_curvature(field, theta);
    report.classification = classify(report.curvature);
    if (!(g.g11 > 0.0 && g.det() > 0.0)) report.note = "metric is not positive definite at this point";
    return report;
}

}  // namespace infogeo
