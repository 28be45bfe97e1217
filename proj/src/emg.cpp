#include "perfcal/emg.hpp"

#include "perfcal/dsp.hpp"
#include "perfcal/error.hpp"
#include "perfcal/textio.hpp"

#include <algorithm>
#include <cmath>

namespace perfcal::emg {

TimeSeries emg_envelope(const TimeSeries& emg, const EnvelopeConfig& cfg) {
    if (emg.kind() != ChannelKind::EMG)
        throw ValidationError("emg_envelope expects an EMG channel, got " + std::string(to_string(emg.kind())));
    const auto width = static_cast<std::size_t>(std::max(1.0, std::round(cfg.window_s * emg.sampling_rate_hz())));
    if (emg.size() < width) throw ProcessingError("EMG input is shorter than the envelope window");
    std::vector<double> rect(emg.values().begin(), emg.values().end());
    for (double& v : rect) v = std::abs(v);
    return emg.with_values(dsp::moving_rms(rect, width));
}

double burst_threshold(const TimeSeries& envelope, const BurstConfig& cfg) {
    if (cfg.threshold_mV) return *cfg.threshold_mV;
    const auto base = cfg.baseline ? slice_window(envelope, *cfg.baseline) : envelope;
    return dsp::mean(base.values()) + cfg.k_sigma * dsp::stddev(base.values());
}

std::vector<EmgBurst> detect_bursts(const TimeSeries& envelope, const BurstConfig& cfg) {
    const double threshold = burst_threshold(envelope, cfg);
    const auto v = envelope.values();
    const double fs = envelope.sampling_rate_hz();
    std::vector<EmgBurst> out;
    for (std::size_t i = 0; i < v.size();) {
        if (!(v[i] > threshold)) {
            ++i;
            continue;
        }
        std::size_t j = i;
        double peak = 0.0;
        while (j < v.size() && v[j] > threshold) peak = std::max(peak, v[j++]);
        if (static_cast<double>(j - i) / fs >= cfg.min_duration_s - 0.5 / fs)
            out.push_back({envelope.time_at(i), envelope.time_at(j), peak});
        i = j;
    }
    return out;
}

std::string format_bursts(const std::vector<EmgBurst>& bursts) {
    std::string out = "start_s,end_s,peak_amplitude_mV\n";
    for (const auto& b : bursts)
        out += textio::format_double(b.start_s) + "," + textio::format_double(b.end_s) + "," +
               textio::format_double(b.peak_amplitude_mV) + "\n";
    return out;
}

std::vector<EmgBurst> parse_bursts(std::string_view text) {
    const auto lines = textio::split(text, '\n');
    if (lines.empty() || textio::trim(lines.front()) != "start_s,end_s,peak_amplitude_mV")
        throw ValidationError("EMG burst file: unexpected header");
    std::vector<EmgBurst> out;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        const auto line = textio::trim(lines[i]);
        if (line.empty()) continue;
        const auto cols = textio::split(line, ',');
        EmgBurst b{};
        if (cols.size() != 3 || !textio::parse_double(cols[0], b.start_s) ||
            !textio::parse_double(cols[1], b.end_s) || !textio::parse_double(cols[2], b.peak_amplitude_mV))
            throw ValidationError("EMG burst file: malformed line " + std::to_string(i + 1));
        out.push_back(b);
    }
    return out;
}

void write_bursts(const std::vector<EmgBurst>& bursts, const std::filesystem::path& path) {
    textio::write_file(path, format_bursts(bursts));
}

std::vector<EmgBurst> load_bursts(const std::filesystem::path& path) {
    return parse_bursts(textio::read_file(path));
}

}  // namespace perfcal::emg
