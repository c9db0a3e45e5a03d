#pragma once

#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "cncas/swcnt/chirality.hpp"
#include "cncas/swcnt/electronic.hpp"

namespace cncas {

enum class InterbandVariant { tight_binding_kubo, lorentz_oscillators, tabulated };

// One Lorentzian line; strength is the peak of Re sigma in units of
// sigma_0 = alpha c / 4.
struct LorentzOscillator {
  double center_eV = 2.0;
  double strength = 1.0;
  double width_eV = 0.05;
};

struct InterbandModel {
  InterbandVariant variant = InterbandVariant::tight_binding_kubo;
  std::vector<LorentzOscillator> oscillators;  // lorentz_oscillators variant
  std::string table_path;                      // tabulated variant
  double broadening_eV = 0.05;                 // Lorentzian width of the Kubo sum
};

// Interband surface conductivity of one tube at real frequency, Gaussian
// velocity units.  Vertical transitions only; k_y is accepted for interface
// stability but the response is evaluated in its local (k_y = 0) limit.
std::complex<double> sigma_inter_real_axis(const SpectralPoint& pt,
                                           const Chirality& ch,
                                           const ElectronicParams& ep,
                                           const InterbandModel& model);

// Continuation of the same response to the imaginary axis (real, >= 0,
// completely monotone in xi).  Backed by a per-model cache shared across
// threads.
double sigma_inter_imag_axis(const SpectralPoint& pt, const Chirality& ch,
                             const ElectronicParams& ep,
                             const InterbandModel& model);

// Immutable spectral table for one (chirality, params, model) triple: the
// real-axis spectrum is built once, continuations are memoized per xi.
class InterbandResponse {
 public:
  InterbandResponse(const Chirality& ch, const ElectronicParams& ep,
                    const InterbandModel& model);
  ~InterbandResponse();
  InterbandResponse(const InterbandResponse&) = delete;
  InterbandResponse& operator=(const InterbandResponse&) = delete;

  // Gaussian velocity units.
  std::complex<double> real_axis(double omega) const;
  double imag_axis(double xi) const;

  // Share of the continuation carried by the extrapolated 1/w^2 tail at the
  // given xi (diagnostic for grid adequacy).
  double tail_fraction(double xi) const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Process-wide registry so free-function call sites reuse the same table.
std::shared_ptr<const InterbandResponse> interband_response(
    const Chirality& ch, const ElectronicParams& ep,
    const InterbandModel& model);

}  // namespace cncas
