#include "caos/forward_model.hpp"

#include <cmath>
#include <random>
#include <string>

#include "caos/errors.hpp"

namespace caos {

namespace {

bool is_pow2(uint32_t v) { return v != 0 && (v & (v - 1)) == 0; }

uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// One noise stream per (seed, channel, bit) keeps the trace independent of
// the parallel schedule.
uint64_t stream_seed(uint64_t seed, uint32_t channel, uint32_t bit) {
    uint64_t h = splitmix64(seed ^ 0x6a09e667f3bcc908ull);
    h = splitmix64(h ^ ((uint64_t(channel) << 32) | bit));
    return h;
}

} // namespace

void SimConfig::validate() const {
    if (bit_rate_hz <= 0.0)
        throw config_error("bit_rate_hz must be positive");
    if (cycles_per_bit < 1)
        throw config_error("cycles_per_bit must be >= 1");
    if (!is_pow2(samples_per_bit))
        throw config_error("samples_per_bit must be a power of 2, got " +
                           std::to_string(samples_per_bit));
    if (samples_per_bit <= 2 * cycles_per_bit)
        throw config_error("samples_per_bit (" + std::to_string(samples_per_bit) +
                           ") must exceed 2 * cycles_per_bit (" +
                           std::to_string(2 * cycles_per_bit) + ") to keep the carrier below Nyquist");
    if (adc_bits < 8 || adc_bits > 24)
        throw config_error("adc_bits must be in [8, 24]");
    if (adc_full_scale <= 0.0)
        throw config_error("adc_full_scale must be positive");
    if (detector_gain <= 0.0)
        throw config_error("detector_gain must be positive");
    if (noise_rms < 0.0)
        throw config_error("noise_rms must be >= 0");
}

int carrier_level(uint32_t sample_index, const SimConfig& config) {
    uint32_t n = sample_index % config.samples_per_bit;
    uint64_t phase = (uint64_t(2) * config.cycles_per_bit * n) / config.samples_per_bit;
    return (phase & 1) ? 0 : 1;
}

int32_t quantize_sample(double value, const SimConfig& config) {
    double scaled = value / config.adc_full_scale * double(config.adc_code_max());
    double rounded = std::round(scaled);   // ties away from zero
    if (rounded < double(config.adc_code_min())) return config.adc_code_min();
    if (rounded > double(config.adc_code_max())) return config.adc_code_max();
    return int32_t(rounded);
}

std::vector<std::vector<double>> encode_analog(const SceneImage& scene,
                                               const WalshCodebook& book,
                                               const SimConfig& config, Exec exec) {
    config.validate();
    size_t pixels = size_t(scene.rows) * scene.cols;
    if (pixels != book.pixel_count())
        throw config_error("scene has " + std::to_string(pixels) + " pixels but the codebook assigns " +
                           std::to_string(book.pixel_count()));

    const uint32_t bits = book.order();
    const uint32_t n_s = config.samples_per_bit;
    const int channels = config.dual_pd ? 2 : 1;
    const double* irr = scene.irradiance.data();
    const uint32_t* assign = book.assignment().data();

    double total = 0.0;
    for (size_t j = 0; j < pixels; ++j) total += irr[j];

    std::vector<uint8_t> carrier(n_s);
    for (uint32_t n = 0; n < n_s; ++n) carrier[n] = uint8_t(carrier_level(n, config));

    std::vector<std::vector<double>> out(channels,
                                         std::vector<double>(size_t(bits) * n_s));

    auto encode_bit = [&](uint32_t k) {
        // Mirror-on sum for this bit: pixels whose code bit is +1.
        double on_sum = 0.0;
        for (size_t j = 0; j < pixels; ++j)
            if (WalshCodebook::code(assign[j], k) > 0) on_sum += irr[j];

        for (int ch = 0; ch < channels; ++ch) {
            double level = config.detector_gain * (ch == 0 ? on_sum : total - on_sum);
            double* dst = out[size_t(ch)].data() + size_t(k) * n_s;
            if (config.noise_rms > 0.0) {
                std::mt19937_64 rng(stream_seed(config.seed, uint32_t(ch), k));
                std::normal_distribution<double> noise(0.0, config.noise_rms);
                for (uint32_t n = 0; n < n_s; ++n)
                    dst[n] = (carrier[n] ? level : 0.0) + noise(rng);
            } else {
                for (uint32_t n = 0; n < n_s; ++n)
                    dst[n] = carrier[n] ? level : 0.0;
            }
        }
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int64_t k = 0; k < int64_t(bits); ++k) encode_bit(uint32_t(k));
    } else {
        for (uint32_t k = 0; k < bits; ++k) encode_bit(k);
    }
    return out;
}

SampleTrace encode(const SceneImage& scene, const WalshCodebook& book,
                   const SimConfig& config, Exec exec) {
    std::vector<std::vector<double>> analog = encode_analog(scene, book, config, exec);

    SampleTrace trace;
    trace.bits = book.order();
    trace.samples_per_bit = config.samples_per_bit;
    trace.config = config;
    trace.channels.resize(analog.size());

    uint64_t saturated = 0;
    const int32_t lo = config.adc_code_min();
    const int32_t hi = config.adc_code_max();
    for (size_t ch = 0; ch < analog.size(); ++ch) {
        const std::vector<double>& src = analog[ch];
        std::vector<int32_t>& dst = trace.channels[ch];
        dst.resize(src.size());
        uint64_t clamped = 0;
#pragma omp parallel for schedule(static) reduction(+ : clamped) if (exec == Exec::parallel)
        for (int64_t i = 0; i < int64_t(src.size()); ++i) {
            double scaled = src[size_t(i)] / config.adc_full_scale * double(hi);
            double rounded = std::round(scaled);
            int32_t code;
            if (rounded < double(lo)) {
                code = lo;
                ++clamped;
            } else if (rounded > double(hi)) {
                code = hi;
                ++clamped;
            } else {
                code = int32_t(rounded);
            }
            dst[size_t(i)] = code;
        }
        saturated += clamped;
    }
    trace.saturation_count = saturated;
    return trace;
}

} // namespace caos
