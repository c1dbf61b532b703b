#pragma once

#include <functional>
#include <string>
#include <vector>

namespace ldl {

// An even test function phi with phihat supported in [-sigma, sigma].
struct TestFunctionPair {
    std::string name;
    double sigma = 0;
    std::function<double(double)> phi;
    std::function<double(double)> phihat;
    // int_u^sigma phihat(v) dv for 0 <= u <= sigma
    std::function<double(double)> phihat_tail_integral;
    double phi0 = 0, phihat0 = 0;
    // sup |phihat| and sup |phihat'| (sampled; used in remainder bounds)
    double phihat_sup = 0, phihat_deriv_sup = 0;

    double eval_phi(double x) const { return phi(x); }
    double eval_phihat(double u) const { return phihat(u); }
    std::string label() const;   // "name:sigma"
};

TestFunctionPair fejer_pair(double sigma);
TestFunctionPair gaussian_truncated_pair(double sigma);
TestFunctionPair indicator_smooth_pair(double sigma);

// "fejer:0.9", "fejer_sigma(0.9)", "gaussian_truncated:1", ...
TestFunctionPair builtin_test_pair(const std::string& spec);
std::vector<std::string> builtin_test_names();

// Smooth cutoff: 1 on |v| <= 1/2, 0 on |v| >= 1.
double smooth_cutoff(double v);

// Max relative error of phi(x) against 2 int_0^sigma phihat(u) cos(2 pi u x) du
// at `samples` points of [0, 2/sigma].
double fourier_consistency_error(const TestFunctionPair& f, int samples = 20);

double digamma(double x);

// A(k) = psi(k/4) + psi((k+2)/4) - 2 log pi, k even >= 2.
double gamma_factor_constant(int k);

// phihat(0) (log N + A(k)) / log R
double conductor_term(int k, double N, double log_R, const TestFunctionPair& f);

enum class Symmetry { U, USp, O, SO_even, SO_odd };
const char* to_string(Symmetry s);
Symmetry parse_symmetry(const std::string& s);

struct RmtPrediction {
    double value = 0;
    bool outside_support = false;   // sigma >= 1: the closed forms below no longer hold
};
RmtPrediction rmt_prediction(Symmetry s, const TestFunctionPair& f);

} // namespace ldl
