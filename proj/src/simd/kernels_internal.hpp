#pragma once

#include "l0lms/simd/kernels.hpp"

namespace l0lms::simd::detail {

double dot_scalar(std::span<const double> a, std::span<const double> b);
double squared_distance_scalar(std::span<const double> a, std::span<const double> b);
void lms_update_scalar(std::span<double> w, std::span<const double> x, double gain);
void l0_update_scalar(std::span<double> w, std::span<const double> x, double gain,
                      double kappa, double alpha);
void za_update_scalar(std::span<double> w, std::span<const double> x, double gain,
                      double rho);
void rza_update_scalar(std::span<double> w, std::span<const double> x, double gain,
                       double rho, double epsilon);

#if defined(L0LMS_HAVE_AVX2)
double dot_avx2(std::span<const double> a, std::span<const double> b);
double squared_distance_avx2(std::span<const double> a, std::span<const double> b);
void lms_update_avx2(std::span<double> w, std::span<const double> x, double gain);
void l0_update_avx2(std::span<double> w, std::span<const double> x, double gain,
                    double kappa, double alpha);
void za_update_avx2(std::span<double> w, std::span<const double> x, double gain,
                    double rho);
void rza_update_avx2(std::span<double> w, std::span<const double> x, double gain,
                     double rho, double epsilon);
#endif

}  // namespace l0lms::simd::detail
