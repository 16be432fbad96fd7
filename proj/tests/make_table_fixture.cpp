// Writes the C4 table fixture from the closed forms in table_oracle.hpp.
#include "table_oracle.hpp"

#include <iostream>
#include <utility>
#include <vector>

using namespace oracle;

namespace {

std::string rep(Family f, int n, int m) {
    std::string s = std::to_string(n) + "*sigma", l = std::to_string(m) + "*lambda";
    switch (f) {
    case Family::Pos: return s + "+" + l;
    case Family::Neg: return "-" + s + "-" + l;
    case Family::LambdaMinusSigma: return l + "-" + s;
    default: return s + "-" + l;
    }
}

}  // namespace

int main() {
    std::vector<std::pair<int, int>> cells;
    for (int n = 1; n <= 5; ++n)
        for (int m = 1; m <= 5; ++m) cells.push_back({n, m});
    for (auto e : {std::pair{6, 1}, std::pair{1, 6}, std::pair{6, 6}}) cells.push_back(e);
    std::cout << "# C4 homology of S^V with constant Z coefficients\n"
              << "# grading | degree | name | top;middle;bottom | top generator (- when not listed)\n";
    for (Family f : {Family::Pos, Family::Neg, Family::LambdaMinusSigma, Family::SigmaMinusLambda})
        for (auto [n, m] : cells)
            for (const auto& [k, name] : table(f, n, m)) {
                std::string ex = top_expression(f, n, m, k);
                std::cout << rep(f, n, m) << " | " << k << " | " << name << " | " << levels_of(name) << " | "
                          << (ex.empty() ? "-" : ex) << "\n";
            }
}
