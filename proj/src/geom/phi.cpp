#include "geom/phi.hpp"

#include "common.hpp"
#include "geom/volumes.hpp"

namespace hypercell::geom {

using direction::DirectionalDistribution;

PhiValue phi_content(const Polytope& K, const DirectionalDistribution& phi, int samples, RandomStream* rng) {
    if (K.dim != phi.dim()) fail(ErrorCode::InvalidArgument, "phi_content: dimension mismatch");
    const int d = K.dim;
    PhiValue out;
    switch (phi.kind()) {
        case DirectionalDistribution::Kind::Discrete: {
            double acc = 0.0;
            for (size_t i = 0; i < phi.directions().size(); ++i)
                acc += phi.weights()[i] * K.support(phi.directions()[i]);
            out.value = acc;
            return out;
        }
        case DirectionalDistribution::Kind::Isotropic: {
            // Phi = V_1 * kappa_{d-1} / (d kappa_d): averaging the support
            // function against the uniform measure gives half the mean width.
            const double factor = unit_ball_volume(d - 1) / (d * unit_ball_volume(d));
            if (d <= 3) {
                out.value = intrinsic_volumes_exact(K).value[1] * factor;
                return out;
            }
            RandomStream local(0x15070c0feULL);
            RandomStream& r = rng ? *rng : local;
            auto iv = intrinsic_volumes_mc(K, samples, r);
            out.value = iv.value[1] * factor;
            out.stderr_ = iv.stderr_[1] * factor;
            out.exact = false;
            return out;
        }
        case DirectionalDistribution::Kind::CapMixture:
        default: {
            RandomStream local(0xca9a11fe11ULL);
            RandomStream& r = rng ? *rng : local;
            if (samples < 2) fail(ErrorCode::InvalidArgument, "phi_content: need at least 2 samples");
            double sum = 0.0, sumsq = 0.0;
            for (int s = 0; s < samples; ++s) {
                Vec u = phi.sample(r);
                double v = 0.5 * (K.support(u) + K.support(-u)); // antithetic pair
                sum += v;
                sumsq += v * v;
            }
            out.value = sum / samples;
            double var = std::max(0.0, sumsq / samples - out.value * out.value);
            out.stderr_ = std::sqrt(var / samples);
            out.exact = false;
            return out;
        }
    }
}

} // namespace hypercell::geom
