#include "caos/decoder.hpp"

#include <bit>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "caos/errors.hpp"
#include "caos/fft.hpp"

namespace caos {

BitAmplitudes extract_bit_amplitudes(std::span<const double> samples, const SimConfig& config,
                                     Exec exec) {
    config.validate();
    const uint32_t n_s = config.samples_per_bit;
    if (samples.empty() || samples.size() % n_s != 0)
        throw format_error("trace length " + std::to_string(samples.size()) +
                           " is not a multiple of the " + std::to_string(n_s) +
                           "-sample bit window");
    const uint32_t bits = uint32_t(samples.size() / n_s);
    const uint32_t bin = config.cycles_per_bit;

    BitAmplitudes result;
    result.fft_length = n_s;
    result.carrier_bin = bin;
    result.amps.resize(bits);

    const FftPlan plan(n_s);
    const double scale = 2.0 / double(n_s);

    auto extract_bit = [&](uint32_t k, std::complex<double>* buf) {
        const double* src = samples.data() + size_t(k) * n_s;
        for (uint32_t n = 0; n < n_s; ++n) buf[n] = src[n];
        plan.forward(buf);
        result.amps[k] = scale * std::abs(buf[bin]);
    };

    if (exec == Exec::parallel) {
#pragma omp parallel
        {
            std::vector<std::complex<double>> buf(n_s);
#pragma omp for schedule(static)
            for (int64_t k = 0; k < int64_t(bits); ++k) extract_bit(uint32_t(k), buf.data());
        }
    } else {
        std::vector<std::complex<double>> buf(n_s);
        for (uint32_t k = 0; k < bits; ++k) extract_bit(k, buf.data());
    }
    return result;
}

BitAmplitudes extract_bit_amplitudes(const SampleTrace& trace, int channel, Exec exec) {
    if (channel < 0 || size_t(channel) >= trace.channels.size())
        throw config_error("trace has " + std::to_string(trace.channels.size()) +
                           " channels, requested channel " + std::to_string(channel));
    const std::vector<int32_t>& codes = trace.channels[size_t(channel)];
    const double step = trace.config.adc_step();
    std::vector<double> samples(codes.size());
    for (size_t i = 0; i < codes.size(); ++i) samples[i] = double(codes[i]) * step;
    return extract_bit_amplitudes(samples, trace.config, exec);
}

BitAmplitudes differential_combine(const BitAmplitudes& ch1, const BitAmplitudes& ch2) {
    if (ch1.amps.size() != ch2.amps.size())
        throw format_error("differential combine: channel lengths differ (" +
                           std::to_string(ch1.amps.size()) + " vs " +
                           std::to_string(ch2.amps.size()) + ")");
    BitAmplitudes diff;
    diff.fft_length = ch1.fft_length;
    diff.carrier_bin = ch1.carrier_bin;
    diff.amps.resize(ch1.amps.size());
    for (size_t k = 0; k < ch1.amps.size(); ++k)
        diff.amps[k] = ch1.amps[k] - ch2.amps[k];
    return diff;
}

DecodedImage correlate_decode(const BitAmplitudes& amps, const WalshCodebook& book,
                              const CalibrationScale& calibration, int rows, int cols,
                              Exec exec) {
    if (amps.amps.size() != book.order())
        throw format_error("amplitude sequence has " + std::to_string(amps.amps.size()) +
                           " bits but the codebook order is " + std::to_string(book.order()));
    if (size_t(rows) * cols != book.pixel_count())
        throw config_error("decode grid " + std::to_string(rows) + "x" + std::to_string(cols) +
                           " does not match the " + std::to_string(book.pixel_count()) +
                           "-pixel assignment");
    if (calibration.alpha <= 0.0)
        throw config_error("calibration alpha must be positive");

    const uint32_t order = book.order();
    const uint32_t* assign = book.assignment().data();
    const double* a = amps.amps.data();
    const double norm = 2.0 / (double(order) * calibration.alpha);

    DecodedImage image;
    image.rows = rows;
    image.cols = cols;
    image.calibration = calibration;
    image.values = Grid<double>(rows, cols, 0.0);
    double* out = image.values.data();
    const int64_t pixels = int64_t(book.pixel_count());

    auto decode_pixel = [&](int64_t m) {
        uint32_t row = assign[m];
        double sum = 0.0;
        for (uint32_t k = 0; k < order; ++k) {
            // code(row, k) without the branch: parity of popcount(row & k)
            sum += (std::popcount(row & k) & 1) ? -a[k] : a[k];
        }
        out[m] = sum * norm;
    };

    if (exec == Exec::parallel) {
#pragma omp parallel for schedule(static)
        for (int64_t m = 0; m < pixels; ++m) decode_pixel(m);
    } else {
        for (int64_t m = 0; m < pixels; ++m) decode_pixel(m);
    }
    return image;
}

double carrier_fundamental(const SimConfig& config) {
    config.validate();
    const uint32_t n_s = config.samples_per_bit;
    const uint32_t bin = config.cycles_per_bit;
    std::complex<double> acc = 0.0;
    for (uint32_t n = 0; n < n_s; ++n) {
        if (!carrier_level(n, config)) continue;
        double angle = -2.0 * std::numbers::pi * double(bin) * double(n) / double(n_s);
        acc += std::complex<double>(std::cos(angle), std::sin(angle));
    }
    return 2.0 / double(n_s) * std::abs(acc);
}

CalibrationScale calibrate(const SimConfig& config, const WalshCodebook&) {
    return {config.detector_gain * carrier_fundamental(config)};
}

CalibrationScale calibrate_empirical(const SimConfig& config, const WalshCodebook& book) {
    config.validate();
    SceneImage ref;
    ref.rows = 1;
    ref.cols = 1;
    ref.irradiance = Grid<double>(1, 1, 1.0);
    ref.illuminated = Grid<uint8_t>(1, 1, 1);

    SimConfig quiet = config;
    quiet.noise_rms = 0.0;
    quiet.dual_pd = false;

    WalshCodebook single(book.order(), 1);
    SampleTrace trace = encode(ref, single, quiet);
    BitAmplitudes amps = extract_bit_amplitudes(trace, 0);
    DecodedImage unit = correlate_decode(amps, single, CalibrationScale{1.0}, 1, 1);
    double alpha = unit.values(0, 0);
    if (alpha <= 0.0) throw config_error("empirical calibration produced alpha <= 0");
    return {alpha};
}

DecodedImage decode_trace(const SampleTrace& trace, const WalshCodebook& book,
                          const CalibrationScale& calibration, int rows, int cols,
                          const DecodeOptions& options) {
    if (options.differential && trace.channels.size() < 2)
        throw config_error("differential decode requires a two-channel trace");

    DecodedImage image;
    if (options.differential) {
        BitAmplitudes a0 = extract_bit_amplitudes(trace, 0, options.exec);
        BitAmplitudes a1 = extract_bit_amplitudes(trace, 1, options.exec);
        BitAmplitudes diff = differential_combine(a0, a1);
        // Complement masks double the per-pixel correlation amplitude.
        CalibrationScale doubled{calibration.alpha * 2.0};
        image = correlate_decode(diff, book, doubled, rows, cols, options.exec);
        image.calibration = calibration;
    } else {
        BitAmplitudes amps = extract_bit_amplitudes(trace, options.channel, options.exec);
        image = correlate_decode(amps, book, calibration, rows, cols, options.exec);
    }
    image.config = trace.config;
    return image;
}

} // namespace caos
