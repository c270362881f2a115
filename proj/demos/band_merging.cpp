// Band merging in the Lame N = 2 lattice: component and crossing counts of the
// PBC spectrum as the imaginary gauge field grows, next to the closed-form
// critical field of the tight-well model.
#include <cstdio>

#include <nhbloch/nhbloch.hpp>

int main() {
  using namespace nhbloch;
  auto const model = std::make_shared<bloch::BlochModel const>(make_lame(2, 0.999), 32);
  double const bc = models::lame2_beta_c(models::Lame2Params::from_m(0.999));
  std::printf("period a = %.4f, closed-form beta_c = %.4f\n\n", model->period(), bc);
  std::printf("%6s %11s %10s %10s\n", "beta", "components", "crossings", "W(-0.5)");
  bloch::BlochConfig cfg;
  cfg.n_pw = 32;
  cfg.k_points = 512;
  for (double beta : {0.2, 0.4, 0.55, 0.58, 0.61, 0.7, 1.0}) {
    cfg.beta = beta;
    auto const curves = bloch::pbc_spectrum(model, cfg);
    char w[16] = "on curve";
    try {
      std::snprintf(w, sizeof w, "%d", topology::winding_number(curves, cplx(-0.5, 0.0)).w);
    } catch (on_spectrum_error const&) {
    }
    std::printf("%6.2f %11d %10d %10s\n", beta, topology::component_count(curves),
                topology::real_axis_crossings(curves), w);
  }
}
