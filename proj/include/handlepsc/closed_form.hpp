#pragma once

#include <array>
#include <string>
#include <vector>

#include "handlepsc/chart.hpp"
#include "handlepsc/curvature.hpp"
#include "handlepsc/profile.hpp"

// Hand-transcribed curvature formulas for the metric
//
//   g = [ R^2 + r_th^2/(4r)   0            r_t r_th/(4r)   0 ]
//       [ 0                   R^2 cos^2    0               0 ]
//       [ r_t r_th/(4r)       0            1 + r_t^2/(4r)  0 ]
//       [ 0                   0            0               r ]
//
// in (theta, phi, t, alpha), plus the unit-sphere repackaging used for the
// radius-one family. Every term of the form r_th * tan(theta) is taken as 0
// when r_th == 0, so evaluation is finite up to the pole cap.
namespace handlepsc::closed_form {

Mat4 metric_classic(const ProfileJet& j, double theta, double R, double fiber_scale = 1.0);
Mat4 metric_radius_one(const ProfileJet& j, double theta, double R);

Mat4 inverse_metric_classic(const ProfileJet& j, double theta, double R);

ChristoffelSymbols christoffel_classic(const ProfileJet& j, double theta, double R);

/// One displayed Riemann component R^rho_{sigma mu nu}.
struct RiemannComponent {
  std::string name;
  std::array<int, 4> index;  // rho, sigma, mu, nu
  double value;
};

/// Every displayed component of the mixed Riemann tensor, explicit zeros
/// included, in display order.
std::vector<RiemannComponent> riemann_classic(const ProfileJet& j, double theta, double R);

struct RicciComponent {
  std::string name;
  int i;
  int k;
  double value;
};

/// All sixteen displayed Ricci entries.
std::vector<RicciComponent> ricci_classic(const ProfileJet& j, double theta, double R);

double scalar_classic(const ProfileJet& j, double theta, double R);
double scalar_radius_one(const ProfileJet& j, double theta, double R);

/// Leading term of the scalar-curvature numerator under R -> aR, T -> aT:
/// 16 r^2 R^2 + 4 R^4 r_t^2 + 4 R^2 r_th^2 - 8 R^4 r r_tt - 8 R^2 r r_thth
/// + 8 r R^2 r_th tan(theta).
double leading_term_classic(const ProfileJet& j, double theta, double R);

/// Leading term in R of the radius-one numerator:
/// 16 r^2 - 8 r r_tt + 8 r r_th tan(theta) - 8 r r_thth + 4 r_t^2 + 4 r_th^2.
double leading_term_radius_one(const ProfileJet& j, double theta);

/// r_th * tan(theta), exactly 0 when r_th == 0.
double r_theta_tan(double r_theta, double theta);

}  // namespace handlepsc::closed_form
