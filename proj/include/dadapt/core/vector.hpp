#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace dadapt {

using Vector = std::vector<double>;
using ConstView = std::span<const double>;

double dot(ConstView a, ConstView b);
double norm_sq(ConstView a);
double norm(ConstView a);
double norm1(ConstView a);
double norm_inf(ConstView a);

// y += alpha * x
void axpy(double alpha, ConstView x, std::span<double> y);

// ||a - b||
double distance(ConstView a, ConstView b);
double distance_inf(ConstView a, ConstView b);

bool all_finite(ConstView a);
bool is_zero(ConstView a);

}  // namespace dadapt
