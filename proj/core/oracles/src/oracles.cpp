// SPDX-License-Identifier: Apache-2.0
//
// macromrc: error-rate analysis for MRC receivers in macrodiversity Rayleigh fading
// Copyright (C) 2026 The macromrc authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#include "macromrc/oracles.hpp"
#include "macromrc/errors.hpp"
#include "macromrc/specfun.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/ooura_fourier_integrals.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <iomanip>
#include <sstream>
#include <functional>
#include <limits>
#include <vector>

namespace macromrc::oracles
{
    namespace
    {
        constexpr double pi = 3.141592653589793238462643;
        constexpr double inf = std::numeric_limits<double>::infinity();

        // what == nullptr: report the error estimate through *err_out instead of checking it
        template <class F>
        double gk(F &&f, double a, double b, const QuadratureSpec &spec, const char *what, double *err_out = nullptr)
        {
            double err = 0.0, l1 = 0.0;
            const double v = boost::math::quadrature::gauss_kronrod<double, 31>::integrate(
                f, a, b, spec.max_subdivisions, spec.relative_tolerance, &err, &l1);
            if (!std::isfinite(v))
                throw OracleFailure(std::string(what ? what : "quadrature") + ": non-finite integrand");
            if (err_out)
            {
                *err_out += err;
                return v;
            }
            if (err > 100.0 * (spec.relative_tolerance * l1 + spec.absolute_tolerance))
                throw OracleFailure(std::string(what) + ": adaptive quadrature did not converge (error estimate " +
                                    std::to_string(err) + ")");
            return v;
        }

        // Integral over [a, max(cuts)] split at the sorted breakpoints.
        template <class F>
        double piecewise(F &&f, double a, std::vector<double> cuts, const QuadratureSpec &spec, const char *what,
                         double *err_out = nullptr)
        {
            std::sort(cuts.begin(), cuts.end());
            double s = 0.0, lo = a;
            for (double c : cuts)
            {
                if (!(c > lo))
                    continue;
                s += gk(f, lo, c, spec, what, err_out);
                lo = c;
            }
            return s;
        }
    }

    double cdf_via_quadrature(double r, const MixtureCoefficients &c, const QuadratureSpec &spec)
    {
        if (!(r > 0.0))
            return 0.0;
        if (std::isinf(r))
            return 1.0;
        const std::vector<double> &d = c.d;
        const auto [dmin, dmax] = std::minmax_element(d.begin(), d.end());
        // Pieces are smooth between the ray breakpoints, so GK31 converges long before depth 4; the
        // cancellation noise would otherwise drive both levels to full depth (4x cost per level).
        QuadratureSpec outer_spec = spec;
        outer_spec.max_subdivisions = std::min(spec.max_subdivisions, 4u);
        QuadratureSpec inner = outer_spec;
        inner.relative_tolerance = spec.relative_tolerance * 0.1;
        // Inner pieces near the origin are tiny and carry cancellation noise; their error estimates
        // are accumulated and judged against the final value instead of piece by piece.
        double inner_err = 0.0, outer_err = 0.0;

        // Given X = x, Y lies in [min(d) x, max(d) x]; the density has kinks on every ray y = d_i x.
        // Outside that wedge the signed terms cancel exactly, so the tail is never integrated.
        auto outer = [&](double x)
        {
            const double lo = std::max(x * x / r, *dmin * x), hi = *dmax * x;
            if (!(hi > lo))
                return 0.0;
            std::vector<double> cuts;
            for (double di : d)
                cuts.push_back(di * x);
            cuts.push_back(hi);
            return piecewise([&](double y) { return joint_pdf(x, y, c); }, lo, cuts, inner, "cdf inner", &inner_err);
        };
        // The lower edge x^2/r crosses the ray y = d_i x at x = r d_i. Beyond x = 100 sum(P) the
        // Chernoff bound 2^n exp(-50) on Pr(X > x) makes the remainder negligible.
        double sp = 0.0;
        for (double p : c.p1)
            sp += p;
        const double end = std::min(r * *dmax, 100.0 * sp);
        std::vector<double> xcuts{end};
        for (double di : d)
            if (r * di < end)
                xcuts.push_back(r * di);
        for (double m : {1.0, 4.0, 16.0})
            if (m * sp < end)
                xcuts.push_back(m * sp);
        const double v = piecewise(outer, 0.0, xcuts, outer_spec, "cdf outer", &outer_err);
        if (outer_err > 100.0 * (spec.relative_tolerance * std::abs(v) + spec.absolute_tolerance))
        {
            std::ostringstream os;
            os << std::setprecision(3) << "cdf oracle did not converge: error estimate " << outer_err << " for value "
               << v << " (accumulated inner estimate " << inner_err << ")";
            throw OracleFailure(os.str());
        }
        return std::clamp(v, 0.0, 1.0);
    }

    double scalar_cdf_via_quadrature(double r, const std::vector<double> &p1, double d, const QuadratureSpec &)
    {
        if (!(r > 0.0))
            return 0.0;
        const double t = r * d;
        // F(t) = 1/2 - (1/pi) int_0^inf Im(exp(-j w t) phi(w)) / w dw, phi(w) = prod 1 / (1 - j w P_i)
        auto phi = [&](double w)
        {
            std::complex<double> v = 1.0;
            for (double p : p1)
                v /= std::complex<double>(1.0, -w * p);
            return v;
        };
        // substitute w = u / t so that the oscillation frequency is 1
        auto fi = [&](double u) { return u == 0.0 ? 0.0 : phi(u / t).imag() / u; };
        auto fr = [&](double u) { return u == 0.0 ? 0.0 : phi(u / t).real() / u; };
        boost::math::quadrature::ooura_fourier_cos<double> cosine;
        boost::math::quadrature::ooura_fourier_sin<double> sine;
        const double ic = cosine.integrate(fi, 1.0).first;
        const double is = sine.integrate(fr, 1.0).first;
        return std::clamp(0.5 - (ic - is) / pi, 0.0, 1.0);
    }

    namespace
    {
        std::function<double(double)> inner_cdf(const GammaModel &m, InnerCdf inner, const QuadratureSpec &spec)
        {
            if (inner == InnerCdf::closed_form)
                return [&m](double r) { return gamma_cdf(r, m); };
            switch (m.kind)
            {
            case ModelKind::unbounded:
                return [](double) { return 0.0; };
            case ModelKind::scalar:
                return [&m, spec](double r) { return scalar_cdf_via_quadrature(r, m.p1, m.d.front(), spec); };
            case ModelKind::mixture:
                break;
            }
            return [&m, spec](double r) { return cdf_via_quadrature(r, *m.mixture, spec); };
        }
    }

    double w1_via_quadrature(double a, double b, const GammaModel &model, InnerCdf inner, const QuadratureSpec &spec)
    {
        if (a == 0.0)
            return 0.0;
        const auto F = inner_cdf(model, inner, spec);
        auto f = [&](double w) { return std::exp(-0.5 * w * w) * F(w * w / b); };
        return a / std::sqrt(2.0 * pi) * gk(f, 0.0, inf, spec, "w1 oracle");
    }

    double w2_via_quadrature(double a, double b, const GammaModel &model, InnerCdf inner, const QuadratureSpec &spec)
    {
        if (a == 0.0)
            return 0.0;
        const auto F = inner_cdf(model, inner, spec);
        auto f = [&](double w) { return std::exp(-0.5 * w * w) * gaussian_q(w) * F(w * w / b); };
        return a * std::sqrt(2.0 / pi) * gk(f, 0.0, inf, spec, "w2 oracle");
    }

    double integral_via_quadrature(IntegralKind kind, double alpha, double beta, const QuadratureSpec &spec)
    {
        if (alpha < 0.0)
            throw OutOfRegionError("integral oracle needs alpha >= 0");
        const double kappa = kind == IntegralKind::I1 ? beta + 0.5 - alpha * alpha : 0.5 + alpha * alpha - beta;
        if (!(kappa > 0.0))
            throw OracleFailure("integral diverges: Gaussian decay rate " + std::to_string(kappa) + " is not positive");
        if (kind == IntegralKind::I1 && alpha == 0.0)
            return 0.0;

        // Q(x) = erfcx(x/sqrt2) exp(-x^2/2) / 2, erfi(ax) = (2/sqrt pi) exp(a^2 x^2) D(ax),
        // erfc(ax) = erfcx(ax) exp(-a^2 x^2); the Gaussians are collected into exp(-kappa x^2).
        const double s = 1.0 / std::sqrt(kappa);
        auto f = [&](double t)
        {
            const double x = t * s;
            const double g = std::exp(-t * t);
            if (g == 0.0)
                return 0.0;
            const double q = erfcx(x / std::sqrt(2.0));
            const double v = kind == IntegralKind::I1 ? x * q * dawson(alpha * x) / std::sqrt(pi)
                                                      : 0.5 * x * q * erfcx(alpha * x);
            return v * g * s;
        };

        double v = 0.0, err = 0.0;
        if (spec.transform == DomainTransform::gaussian_scaling)
        {
            boost::math::quadrature::exp_sinh<double> es;
            double l1 = 0.0;
            v = es.integrate(f, spec.relative_tolerance, &err, &l1);
            if (err > 100.0 * (spec.relative_tolerance * l1 + spec.absolute_tolerance))
                throw OracleFailure("integral oracle did not converge");
        }
        else
            v = gk(f, 0.0, inf, spec, "integral oracle");
        return v;
    }
}
