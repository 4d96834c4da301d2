#include "handlepsc/closed_form.hpp"

#include <cmath>

namespace handlepsc::closed_form {
namespace {

// Shorthand shared by all formulas.
struct Terms {
  double r, a, b, aa, ab, bb;  // r, r_th, r_t, r_thth, r_tht, r_tt
  double R2, R4;
  double c, s, tan, sec2;
  double tt;  // tan(theta), or 0 when r_th == 0
  double D;   // R^2 r_t^2 + r_th^2 + 4 R^2 r
  double K;   // r_thth r_t^2 - 2 r_th r_tht r_t + 2 r r_tht^2 + r_tt (r_th^2 - 2 r r_thth)

  Terms(const ProfileJet& j, double theta, double R)
      : r(j.r), a(j.r_theta), b(j.r_t), aa(j.r_thetatheta), ab(j.r_thetat), bb(j.r_tt) {
    R2 = R * R;
    R4 = R2 * R2;
    c = std::cos(theta);
    s = std::sin(theta);
    tan = std::tan(theta);
    sec2 = 1.0 / (c * c);
    tt = a == 0.0 ? 0.0 : tan;
    D = R2 * b * b + a * a + 4.0 * R2 * r;
    K = aa * b * b - 2.0 * a * ab * b + 2.0 * r * ab * ab + bb * (a * a - 2.0 * r * aa);
  }
};

}  // namespace

double r_theta_tan(double r_theta, double theta) {
  return r_theta == 0.0 ? 0.0 : r_theta * std::tan(theta);
}

Mat4 metric_classic(const ProfileJet& j, double theta, double R, double fiber_scale) {
  const double c = std::cos(theta);
  Mat4 g = Mat4::Zero();
  g(0, 0) = R * R + j.r_theta * j.r_theta / (4.0 * j.r);
  g(0, 2) = g(2, 0) = j.r_t * j.r_theta / (4.0 * j.r);
  g(1, 1) = R * R * c * c;
  g(2, 2) = j.r_t * j.r_t / (4.0 * j.r) + 1.0;
  g(3, 3) = fiber_scale * j.r;
  return g;
}

Mat4 metric_radius_one(const ProfileJet& j, double theta, double R) {
  const double c = std::cos(theta);
  const double q = 4.0 * j.r * R * R;
  Mat4 g = Mat4::Zero();
  g(0, 0) = 1.0 + j.r_theta * j.r_theta / q;
  g(0, 2) = g(2, 0) = j.r_t * j.r_theta / q;
  g(1, 1) = c * c;
  g(2, 2) = 1.0 + j.r_t * j.r_t / q;
  g(3, 3) = j.r;
  return g;
}

Mat4 inverse_metric_classic(const ProfileJet& j, double theta, double R) {
  const Terms T(j, theta, R);
  Mat4 g = Mat4::Zero();
  g(0, 0) = (T.b * T.b + 4.0 * T.r) / T.D;
  g(0, 2) = g(2, 0) = -T.b * T.a / T.D;
  g(1, 1) = T.sec2 / T.R2;
  g(2, 2) = (4.0 * T.r * T.R2 + T.a * T.a) / T.D;
  g(3, 3) = 1.0 / T.r;
  return g;
}

ChristoffelSymbols christoffel_classic(const ProfileJet& j, double theta, double R) {
  const Terms T(j, theta, R);
  const double r = T.r, a = T.a, b = T.b, aa = T.aa, ab = T.ab, bb = T.bb;
  const double D = T.D, R2 = T.R2;
  ChristoffelSymbols G;
  for (Mat4& m : G) m.setZero();

  Mat4& th = G[kTheta];
  th(0, 0) = -a * (a * a - 2.0 * r * aa) / (2.0 * r * D);
  th(0, 2) = th(2, 0) = a * (2.0 * r * ab - b * a) / (2.0 * r * D);
  th(1, 1) = R2 * (b * b + 4.0 * r) * T.c * T.s / D;
  th(2, 2) = -(b * b - 2.0 * r * bb) * a / (2.0 * r * D);
  th(3, 3) = -2.0 * r * a / D;

  Mat4& ph = G[kPhi];
  ph(0, 1) = ph(1, 0) = -T.tan;

  Mat4& tm = G[kTime];
  tm(0, 0) = -R2 * b * (a * a - 2.0 * r * aa) / (2.0 * r * D);
  tm(0, 2) = tm(2, 0) = R2 * b * (2.0 * r * ab - b * a) / (2.0 * r * D);
  tm(1, 1) = -R2 * b * a * T.c * T.s / D;
  tm(2, 2) = -R2 * b * (b * b - 2.0 * r * bb) / (2.0 * r * D);
  tm(3, 3) = -2.0 * r * R2 * b / D;

  Mat4& al = G[kAlpha];
  al(0, 3) = al(3, 0) = a / (2.0 * r);
  al(2, 3) = al(3, 2) = b / (2.0 * r);
  return G;
}

std::vector<RiemannComponent> riemann_classic(const ProfileJet& j, double theta, double R) {
  const Terms T(j, theta, R);
  const double r = T.r, a = T.a, b = T.b, aa = T.aa, ab = T.ab, bb = T.bb;
  const double D = T.D, D2 = D * D, R2 = T.R2, K = T.K, c = T.c, s = T.s, tt = T.tt;
  const double b2 = b * b, a2 = a * a;
  const double sin2 = 2.0 * s * c;

  std::vector<RiemannComponent> out;
  auto add = [&](int rho, int sigma, int mu, int nu, double v) {
    std::string name = "R^";
    name += kCoordNames[rho];
    name += "_{";
    name += kCoordNames[sigma];
    name += ' ';
    name += kCoordNames[mu];
    name += ' ';
    name += kCoordNames[nu];
    name += '}';
    out.push_back({std::move(name), {rho, sigma, mu, nu}, v});
  };
  constexpr int th = kTheta, ph = kPhi, t = kTime, al = kAlpha;

  add(th, th, th, th, 0.0);
  add(th, ph, th, th, 0.0);
  add(th, t, th, th, 0.0);
  add(th, al, th, th, 0.0);
  add(th, th, th, ph, 0.0);
  add(th, ph, th, ph,
      R2 * c / D2 *
          (R2 * c * b2 * b2 + 4.0 * r * (2.0 * R2 * c * b2 + a * (c * a - s * aa)) +
           s * a2 * ab * b + 2.0 * s * a2 * a + a * b2 * (c * a - s * aa) +
           16.0 * R2 * c * r * r));
  add(th, t, th, ph, 0.0);
  add(th, al, th, ph, 0.0);
  add(th, th, th, t, -R2 * b * a * K / (2.0 * r * D2));
  add(th, ph, th, t, 0.0);
  add(th, t, th, t, -R2 * (b2 + 4.0 * r) * K / (2.0 * r * D2));
  add(th, al, th, t, 0.0);
  add(th, th, th, al, 0.0);
  add(th, ph, th, al, 0.0);
  add(th, t, th, al, 0.0);
  add(th, al, th, al, 2.0 * R2 * r * (2.0 * a2 + b * ab * a - (b2 + 4.0 * r) * aa) / D2);

  add(ph, th, ph, th, tt * (a2 * a - 2.0 * r * a * aa) / (2.0 * r * D) - T.tan * T.tan + T.sec2);
  add(ph, ph, ph, th, 0.0);
  add(ph, t, ph, th, tt * a * (b * a - 2.0 * r * ab) / (2.0 * r * D));
  add(ph, al, ph, th, 0.0);
  add(ph, th, ph, ph, 0.0);
  add(ph, ph, ph, ph, 0.0);
  add(ph, t, ph, ph, 0.0);
  add(ph, al, ph, ph, 0.0);
  add(ph, th, ph, t, tt * a * (b * a - 2.0 * r * ab) / (2.0 * r * D));
  add(ph, ph, ph, t, 0.0);
  add(ph, t, ph, t, tt * (b2 - 2.0 * r * bb) * a / (2.0 * r * D));
  add(ph, al, ph, t, 0.0);
  add(ph, th, ph, al, 0.0);
  add(ph, ph, ph, al, 0.0);
  add(ph, t, ph, al, 0.0);
  add(ph, al, ph, al, 2.0 * tt * r * a / D);

  const double w = 2.0 * R2 * b2 - bb * (a2 + 4.0 * R2 * r) + a * ab * b;
  add(t, th, t, th, -R2 * K * (a2 + 4.0 * R2 * r) / (2.0 * r * D2));
  add(t, ph, t, th, 0.0);
  add(t, t, t, th, -R2 * b * a * K / (2.0 * r * D2));
  add(t, al, t, th, 0.0);
  add(t, th, t, ph, 0.0);
  add(t, ph, t, ph, R2 * sin2 * a * w / (2.0 * D2));
  add(t, t, t, ph, 0.0);
  add(t, al, t, ph, 0.0);
  add(t, th, t, t, 0.0);
  add(t, ph, t, t, 0.0);
  add(t, t, t, t, 0.0);
  add(t, al, t, t, 0.0);
  add(t, th, t, al, 0.0);
  add(t, ph, t, al, 0.0);
  add(t, t, t, al, 0.0);
  add(t, al, t, al, 2.0 * R2 * r * w / D2);

  add(al, th, al, th, R2 * (a2 - 2.0 * r * aa) / (r * D));
  add(al, ph, al, th, 0.0);
  add(al, t, al, th, R2 * (b * a - 2.0 * r * ab) / (r * D));
  add(al, al, al, th, 0.0);
  add(al, th, al, ph, 0.0);
  add(al, ph, al, ph, R2 * sin2 * a / D);
  add(al, t, al, ph, 0.0);
  add(al, al, al, ph, 0.0);
  add(al, th, al, t, R2 * (b * a - 2.0 * r * ab) / (r * D));
  add(al, ph, al, t, 0.0);
  add(al, t, al, t, R2 * (b2 - 2.0 * r * bb) / (r * D));
  add(al, al, al, t, 0.0);
  add(al, th, al, al, 0.0);
  add(al, ph, al, al, 0.0);
  add(al, t, al, al, 0.0);
  add(al, al, al, al, 0.0);
  return out;
}

std::vector<RicciComponent> ricci_classic(const ProfileJet& j, double theta, double R) {
  const Terms T(j, theta, R);
  const double r = T.r, a = T.a, b = T.b, aa = T.aa, ab = T.ab, bb = T.bb;
  const double D = T.D, D2 = D * D, R2 = T.R2, K = T.K, c = T.c, s = T.s, tt = T.tt;
  const double b2 = b * b, a2 = a * a;

  const double thth = R2 * (a2 - 2.0 * r * aa) / (r * D) -
                      R2 * K * (a2 + 4.0 * R2 * r) / (2.0 * r * D2) +
                      tt * (a2 * a - 2.0 * r * a * aa) / (2.0 * r * D) - T.tan * T.tan + T.sec2;
  const double tth = (2.0 * R2 * (b * a - 2.0 * r * ab) * D - R2 * b * a * K +
                      tt * a * (b * a - 2.0 * r * ab) * D) /
                     (2.0 * r * D2);
  const double phph =
      R2 * c / D2 *
      (R2 * c * b2 * b2 + a * b2 * (-s * aa + c * a + 4.0 * R2 * s) +
       4.0 * r * (2.0 * R2 * c * b2 + a * (-R2 * s * bb - s * aa + c * a + 2.0 * R2 * s)) +
       2.0 * s * a2 * ab * b - s * (bb - 4.0) * a2 * a + 16.0 * R2 * c * r * r);
  const double tt_entry = (2.0 * R2 * (b2 - 2.0 * r * bb) * D - R2 * (b2 + 4.0 * r) * K +
                           tt * (b2 - 2.0 * r * bb) * a * D) /
                          (2.0 * r * D2);
  const double alal = 2.0 * r / D2 *
                      (2.0 * R2 * b * a * ab + R2 * b2 * (-aa + tt * a + 2.0 * R2) -
                       4.0 * R2 * r * (R2 * bb + aa - tt * a) +
                       a2 * (-R2 * bb + tt * a + 2.0 * R2));

  std::vector<RicciComponent> out;
  auto add = [&](int i, int k, double v) {
    out.push_back({std::string("Ric_{") + kCoordNames[i] + ' ' + kCoordNames[k] + '}', i, k, v});
  };
  add(kTheta, kTheta, thth);
  add(kPhi, kTheta, 0.0);
  add(kTime, kTheta, tth);
  add(kAlpha, kTheta, 0.0);
  add(kTheta, kPhi, 0.0);
  add(kPhi, kPhi, phph);
  add(kTime, kPhi, 0.0);
  add(kAlpha, kPhi, 0.0);
  add(kTheta, kTime, tth);
  add(kPhi, kTime, 0.0);
  add(kTime, kTime, tt_entry);
  add(kAlpha, kTime, 0.0);
  add(kTheta, kAlpha, 0.0);
  add(kPhi, kAlpha, 0.0);
  add(kTime, kAlpha, 0.0);
  add(kAlpha, kAlpha, alal);
  return out;
}

double scalar_classic(const ProfileJet& j, double theta, double R) {
  const Terms T(j, theta, R);
  const double r = T.r, a = T.a, b = T.b, aa = T.aa, ab = T.ab, bb = T.bb;
  const double R2 = T.R2, R4 = T.R4, tt = T.tt;
  const double b2 = b * b, a2 = a * a;
  const double den = R2 * (4.0 * r + b2) + a2;
  const double num =
      16.0 * r * r * R2 -
      a * tt *
          (4.0 * r * (R2 * (bb - 2.0) + aa) + b * (-4.0 * R2 * b + b * aa - 2.0 * a * ab) +
           (bb - 4.0) * a2) +
      4.0 * r * (-2.0 * R4 * bb + R2 * (2.0 * b2 + (bb - 2.0) * aa - ab * ab) + a2) +
      4.0 * R4 * b2 + R2 * (b2 * b2 - 4.0 * b2 * aa + 8.0 * b * a * ab - 4.0 * (bb - 1.0) * a2) +
      b2 * a2;
  return 2.0 * num / (den * den);
}

double scalar_radius_one(const ProfileJet& j, double theta, double R) {
  const Terms T(j, theta, R);
  const double r = T.r, a = T.a, b = T.b, aa = T.aa, ab = T.ab, bb = T.bb;
  const double R2 = T.R2, R4 = T.R4, tt = T.tt;
  const double b2 = b * b, a2 = a * a;
  const double den = 4.0 * R2 * r + b2 + a2;
  const double num =
      16.0 * R4 * r * r -
      4.0 * R2 * r *
          (bb * (2.0 * R2 + a * tt - aa) - 2.0 * R2 * a * tt + 2.0 * R2 * aa - 2.0 * b2 - a2 +
           a * aa * tt + ab * ab) +
      b2 * (a * (4.0 * R2 - aa) * tt + 4.0 * R2 * (R2 - aa) + a2) +
      2.0 * b * a * ab * (4.0 * R2 + a * tt) +
      a2 * (4.0 * (R4 + R2 * a * tt) - bb * (4.0 * R2 + a * tt)) + b2 * b2;
  return 2.0 * num / (den * den);
}

double leading_term_classic(const ProfileJet& j, double theta, double R) {
  const double R2 = R * R;
  const double R4 = R2 * R2;
  return 16.0 * j.r * j.r * R2 + 4.0 * R4 * j.r_t * j.r_t + 4.0 * R2 * j.r_theta * j.r_theta -
         8.0 * R4 * j.r * j.r_tt - 8.0 * R2 * j.r * j.r_thetatheta +
         8.0 * j.r * R2 * r_theta_tan(j.r_theta, theta);
}

double leading_term_radius_one(const ProfileJet& j, double theta) {
  return 16.0 * j.r * j.r - 8.0 * j.r * j.r_tt + 8.0 * j.r * r_theta_tan(j.r_theta, theta) -
         8.0 * j.r * j.r_thetatheta + 4.0 * j.r_t * j.r_t + 4.0 * j.r_theta * j.r_theta;
}

}  // namespace handlepsc::closed_form
