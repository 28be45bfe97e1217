#include "perfcal/features.hpp"

#include "perfcal/error.hpp"
#include "perfcal/textio.hpp"

#include <algorithm>
#include <cmath>

namespace perfcal::features {

namespace {

std::optional<HeartFeatures> heart(const std::optional<cardiac::BeatSeries>& beats, const Window& w) {
    if (!beats) return std::nullopt;
    if (beats->size() < 2) throw ProcessingError("window " + w.label + " is not covered by cardiac data");
    const auto stats = cardiac::hr_stats(cardiac::beats_to_hr(*beats), w);
    return HeartFeatures{stats.hr_mean_bpm, stats.hr_std_bpm};
}

template <typename Events, typename TimeOf, typename AmpOf>
std::optional<EventFeatures> count_events(const std::optional<Events>& events, const Window& w, TimeOf time_of,
                                          AmpOf amp_of) {
    if (!events) return std::nullopt;
    EventFeatures f{0, 0.0};
    double sum = 0.0;
    for (const auto& e : *events) {
        if (!w.contains(time_of(e))) continue;
        ++f.count;
        sum += amp_of(e);
    }
    if (f.count > 0) f.mean_amplitude = sum / f.count;
    return f;
}

std::string field(const std::optional<HeartFeatures>& h, bool mean) {
    if (!h) return "NA";
    return textio::format_fixed(mean ? h->mean_bpm : h->std_bpm, 4);
}

}  // namespace

SlopeFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw ProcessingError("fit_line: x and y differ in length");
    if (x.size() < 2) throw ProcessingError("a line fit needs at least 2 samples");
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw ProcessingError("a line fit needs at least two distinct abscissae");
    SlopeFit fit{};
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += e * e;
    }
    fit.rms_residual = std::sqrt(ss / n);
    return fit;
}

FeatureVector extract_features(const SessionEvents& events, const Window& w) {
    FeatureVector fv;
    fv.label = w.label;
    fv.start_s = w.start_s;
    fv.end_s = w.end_s;
    fv.ecg = heart(events.ecg_beats, w);
    fv.bvp = heart(events.bvp_beats, w);
    fv.gsr = count_events(
        events.scrs, w, [](const eda::ScrEvent& e) { return e.peak_s; },
        [](const eda::ScrEvent& e) { return e.amplitude_uS; });
    fv.emg = count_events(
        events.bursts, w, [](const emg::EmgBurst& b) { return b.start_s; },
        [](const emg::EmgBurst& b) { return b.peak_amplitude_mV; });
    return fv;
}

SlopeFit hr_slope(const cardiac::HrSeries& hr, const Window& w) {
    std::vector<double> t;
    std::vector<double> v;
    for (std::size_t i = 0; i < hr.hr_bpm.size(); ++i) {
        if (!w.contains(hr.times_s[i]) || (i < hr.flagged.size() && hr.flagged[i])) continue;
        t.push_back(hr.times_s[i]);
        v.push_back(hr.hr_bpm[i]);
    }
    if (t.size() < 2) throw ProcessingError("HR slope needs at least 2 samples in window " + w.label);
    return fit_line(t, v);
}

SlopeFit gsr_cumulative_slope(const std::vector<eda::ScrEvent>& scrs, const Window& w) {
    std::vector<eda::ScrEvent> inside;
    for (const auto& e : scrs)
        if (w.contains(e.peak_s)) inside.push_back(e);
    if (inside.size() < 2) throw ProcessingError("GSR slope needs at least 2 events in window " + w.label);
    std::stable_sort(inside.begin(), inside.end(),
                     [](const auto& a, const auto& b) { return a.peak_s < b.peak_s; });
    std::vector<double> t;
    std::vector<double> c;
    double running = 0.0;
    for (const auto& e : inside) {
        running += e.amplitude_uS;
        t.push_back(e.peak_s);
        c.push_back(running);
    }
    return fit_line(t, c);
}

std::vector<FeatureVector> feature_table(const SessionEvents& events, const SessionMarkers& markers) {
    validate_markers(markers);
    std::vector<FeatureVector> rows;
    for (const auto& s : markers.scenarios) rows.push_back(extract_features(events, s.window()));
    for (const auto& s : markers.scenarios)
        for (const auto& w : markers.level_windows(s.id)) rows.push_back(extract_features(events, w));
    return rows;
}

std::string format_feature_table(const std::vector<FeatureVector>& rows) {
    std::string out =
        "window,start_s,end_s,hr_mean_bpm,hr_std_bpm,bvp_hr_mean_bpm,bvp_hr_std_bpm,"
        "gsr_peak_count,gsr_peak_mean_amplitude_uS,emg_burst_count,emg_burst_mean_amplitude_mV\n";
    for (const auto& r : rows) {
        out += r.label + "," + textio::format_fixed(r.start_s, 3) + "," + textio::format_fixed(r.end_s, 3) + ",";
        out += field(r.ecg, true) + "," + field(r.ecg, false) + ",";
        out += field(r.bvp, true) + "," + field(r.bvp, false) + ",";
        out += r.gsr ? std::to_string(r.gsr->count) + "," + textio::format_fixed(r.gsr->mean_amplitude, 6) : "NA,NA";
        out += ",";
        out += r.emg ? std::to_string(r.emg->count) + "," + textio::format_fixed(r.emg->mean_amplitude, 6) : "NA,NA";
        out += "\n";
    }
    return out;
}

}  // namespace perfcal::features
