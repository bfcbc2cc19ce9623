#include "rispaces/integrate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace rispaces {

namespace {

struct Cell {
    double x1, x2, g1, g2;
    double gap() const { return (x2 - x1) * std::fabs(g1 - g2); }
};

struct CellOrder {
    bool operator()(const Cell& a, const Cell& b) const { return a.gap() < b.gap(); }
};

} // namespace

BracketIntegral integrate_monotone_cells(const std::function<double(double)>& g,
                                         std::vector<double> cells, double tol,
                                         long budget) {
    BracketIntegral out;
    std::sort(cells.begin(), cells.end());
    cells.erase(std::unique(cells.begin(), cells.end()), cells.end());
    if (cells.size() < 2) return out;

    std::priority_queue<Cell, std::vector<Cell>, CellOrder> heap;
    double total_gap = 0;
    auto push = [&](double x1, double x2, double g1, double g2) {
        if (!(x2 > x1)) return;
        if (!std::isfinite(g1) || !std::isfinite(g2)) {
            // Nudge inward once; integrable endpoint singularities must be
            // peeled by the caller in closed form.
            double h = (x2 - x1) * 1e-9;
            if (!std::isfinite(g1)) g1 = g(x1 + h);
            if (!std::isfinite(g2)) g2 = g(x2 - h);
            if (!std::isfinite(g1) || !std::isfinite(g2)) {
                out.err = std::numeric_limits<double>::infinity();
                return;
            }
        }
        Cell c{x1, x2, g1, g2};
        total_gap += c.gap();
        heap.push(c);
    };

    for (std::size_t i = 0; i + 1 < cells.size(); ++i)
        push(cells[i], cells[i + 1], g(cells[i]), g(cells[i + 1]));
    if (std::isinf(out.err)) return out;

    long used = static_cast<long>(heap.size());
    while (!heap.empty() && total_gap > 2 * tol && used < budget) {
        Cell c = heap.top();
        heap.pop();
        total_gap -= c.gap();
        double xm = 0.5 * (c.x1 + c.x2);
        double gm = g(xm);
        push(c.x1, xm, c.g1, gm);
        push(xm, c.x2, gm, c.g2);
        ++used;
    }

    double lo = 0, hi = 0;
    while (!heap.empty()) {
        const Cell& c = heap.top();
        lo += (c.x2 - c.x1) * std::min(c.g1, c.g2);
        hi += (c.x2 - c.x1) * std::max(c.g1, c.g2);
        heap.pop();
    }
    out.value = 0.5 * (lo + hi);
    out.err = 0.5 * (hi - lo);
    out.cells = used;
    return out;
}

double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol, int max_iter) {
    const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
    double f1 = f(x1), f2 = f(x2);
    for (int i = 0; i < max_iter && (b - a) > tol; ++i) {
        if (f1 <= f2) {
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
    return 0.5 * (a + b);
}

} // namespace rispaces
