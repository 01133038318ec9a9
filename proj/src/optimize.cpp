#include "spinport/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace spinport {

ScalarMaxResult golden_section_max(const std::function<double(double)>& f,
                                   double lo, double hi, int iters) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double a = lo, b = hi;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < iters; ++i) {
        if (f1 >= f2) {  // ">=" keeps the left (smaller-x) candidate on ties
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = f(x2);
        }
    }
    ScalarMaxResult r;
    if (f1 >= f2) {
        r.x = x1;
        r.value = f1;
    } else {
        r.x = x2;
        r.value = f2;
    }
    double flo = f(lo), fhi = f(hi);
    if (flo > r.value) {
        r = {lo, flo, true};
    } else if (fhi > r.value) {
        r = {hi, fhi, true};
    }
    return r;
}

SimplexResult nelder_mead_min(const std::function<double(const Eigen::VectorXd&)>& f,
                              const Eigen::VectorXd& x0, double step,
                              int max_evals, double tol) {
    const double refl = 1.0, expa = 2.0, contr = 0.5, shrink = 0.5;
    const int n = static_cast<int>(x0.size());
    int evals = 0;

    std::vector<Eigen::VectorXd> pts(n + 1, x0);
    std::vector<double> vals(n + 1);
    for (int i = 1; i <= n; ++i) pts[i](i - 1) += step;
    for (int i = 0; i <= n; ++i) {
        vals[i] = f(pts[i]);
        ++evals;
    }

    std::vector<int> order(n + 1);
    while (evals < max_evals) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return vals[a] < vals[b]; });
        int best = order[0], worst = order[n], second_worst = order[n - 1];
        if (vals[worst] - vals[best] < tol) break;

        Eigen::VectorXd centroid = Eigen::VectorXd::Zero(n);
        for (int i = 0; i <= n; ++i)
            if (i != worst) centroid += pts[i];
        centroid /= n;

        Eigen::VectorXd xr = centroid + refl * (centroid - pts[worst]);
        double fr = f(xr);
        ++evals;
        if (fr < vals[best]) {
            Eigen::VectorXd xe = centroid + expa * (xr - centroid);
            double fe = f(xe);
            ++evals;
            if (fe < fr) {
                pts[worst] = xe;
                vals[worst] = fe;
            } else {
                pts[worst] = xr;
                vals[worst] = fr;
            }
        } else if (fr < vals[second_worst]) {
            pts[worst] = xr;
            vals[worst] = fr;
        } else {
            Eigen::VectorXd xc = centroid + contr * (pts[worst] - centroid);
            double fc = f(xc);
            ++evals;
            if (fc < vals[worst]) {
                pts[worst] = xc;
                vals[worst] = fc;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    pts[i] = pts[best] + shrink * (pts[i] - pts[best]);
                    vals[i] = f(pts[i]);
                    ++evals;
                }
            }
        }
    }

    int best = 0;
    for (int i = 1; i <= n; ++i)
        if (vals[i] < vals[best]) best = i;
    return SimplexResult{pts[best], vals[best], evals};
}

}  // namespace spinport
