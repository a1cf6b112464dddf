#pragma once

#include <vector>

#include "rkbs/feature_space.hpp"

namespace rkbs {

struct SipValue {
    double value;
    double alpha_used;  // gauge norm of the second argument (1 for sphere mode)
};

// Semi-inner product [f, g] of a gauge-Orlicz or weighted l^p space:
//   [f,g] = a^2 (sum_j w_j f_j sgn(g_j) phi(|g_j|/a)) / (sum_j w_j |g_j| phi(|g_j|/a)),
// a = ||g||. Linear in f, [g,g] = ||g||^2, satisfies Cauchy-Schwarz. p-norm
// specs use phi(t) = t^(p-1); g = 0 is rejected.
SipValue sip(const FeatureSpace& space, const Vec& f, const Vec& g);

// Duality map J with pairing(f, J(f)) = ||f||^2 and dual-norm(J(f)) = ||f||.
// lp (1<p<inf): J_p(f) = sgn(f)|f|^(p-1) / ||f||^(p-2);
// orlicz_gauge:  J_Phi from the s.i.p. formula;
// orlicz_dual:   inverse of J_Phi, found by a 1-D root solve (the gauge-space
//                formula does not invert J_Phi for non-power pairs).
// f = 0 maps to 0; l1 and sup are rejected as non-smooth.
Vec duality_map(const FeatureSpace& space, const Vec& f);

// Gateaux derivative of the norm: G(f) = J(f)/||f||, G(0) = 0.
Vec gateaux_derivative(const FeatureSpace& space, const Vec& f);

// Central finite difference (||f+eps h|| - ||f-eps h||) / (2 eps); the test
// oracle for gateaux_derivative.
double gateaux_fd(const FeatureSpace& space, const Vec& f, const Vec& h, double eps);

struct ScanPoint {
    double k;
    double value;
};

// Unit-sphere (alpha = 1) scan of the scaled-entropy s.i.p.:
//   S_k(x,y) = (sum_j x_j sgn(y_j) log(1+k|y_j|)) / (sum_j |y_j| log(1+k|y_j|)),
// which trends from scan_l2_limit (k -> 0) to scan_l1_limit (k -> inf). The
// true s.i.p. (alpha = gauge norm of y) is available through sip() with an
// orlicz_gauge(scaled_entropy(k)) space.
std::vector<ScanPoint> sip_sphere_scan(const Vec& x, const Vec& y, const std::vector<double>& k_list);

double scan_l2_limit(const Vec& x, const Vec& y);  // sum x y / sum y^2
double scan_l1_limit(const Vec& x, const Vec& y);  // sum x sgn(y) / sum |y|

}  // namespace rkbs
