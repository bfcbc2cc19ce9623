#ifndef RISPACES_INTEGRATE_HPP
#define RISPACES_INTEGRATE_HPP

#include <functional>
#include <vector>

namespace rispaces {

struct BracketIntegral {
    double value = 0;
    double err = 0;  // half-width of the certified bracket
    long cells = 0;
};

// Certified integral of a nonnegative integrand that is monotone between
// consecutive cell boundaries. Brackets each cell by its endpoint values and
// refines the worst cells until the total gap is below tol or the cell
// budget runs out; err reports whatever gap remains.
BracketIntegral integrate_monotone_cells(const std::function<double(double)>& g,
                                         std::vector<double> cells,
                                         double tol,
                                         long budget = 200000);

// Golden-section minimum of a convex function on [a, b]. Returns argmin;
// the value is refined to interval width tol.
double golden_min(const std::function<double(double)>& f, double a, double b,
                  double tol, int max_iter = 200);

} // namespace rispaces

#endif
