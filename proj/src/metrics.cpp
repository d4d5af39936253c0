#include "dcbsim/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "dcbsim/event_queue.hpp"

namespace dcbsim {

Metrics::Metrics(EventQueue& eq, SimTime warmup, SimTime horizon,
                 SimTime throughput_bin)
    : _eq(eq), _warmup(warmup), _horizon(horizon), _bin(throughput_bin) {}

void Metrics::on_inject(FlowClass cls, std::uint32_t bytes) {
    auto& t = cls_totals(cls);
    t.bytes_injected += bytes;
    t.frames_injected += 1;
}

void Metrics::on_deliver(FlowClass cls, std::uint32_t bytes) {
    auto& t = cls_totals(cls);
    t.bytes_delivered += bytes;
    t.frames_delivered += 1;
}

void Metrics::on_drop(FlowClass cls, std::uint32_t bytes, int) {
    auto& t = cls_totals(cls);
    t.bytes_dropped += bytes;
    t.frames_dropped += 1;
}

void Metrics::on_stage(FlowClass cls, std::int64_t delta_bytes) {
    _staged[static_cast<int>(cls)] += delta_bytes;
}

void Metrics::on_flight(FlowClass cls, std::int64_t delta_bytes) {
    _in_flight[static_cast<int>(cls)] += delta_bytes;
}

int Metrics::register_link(const std::string& name, std::uint64_t bps) {
    LinkStats ls;
    ls.name = name;
    ls.bps = bps;
    _links.push_back(std::move(ls));
    return static_cast<int>(_links.size()) - 1;
}

void Metrics::track_link_bins(int link) { _links[link].binned = true; }

void Metrics::on_link_data(int link, std::uint32_t bytes) {
    auto& ls = _links[link];
    const SimTime t = _eq.now();
    if (in_window(t)) ls.window_bytes += bytes;
    if (ls.binned) {
        const auto bin = static_cast<std::size_t>(t / _bin);
        if (ls.bins.size() <= bin) ls.bins.resize(bin + 1, 0);
        ls.bins[bin] += bytes;
    }
}

void Metrics::set_bottleneck_links(std::vector<int> links) {
    _bottleneck_links = std::move(links);
    for (int l : _bottleneck_links) track_link_bins(l);
}

void Metrics::set_victim_links(std::vector<int> links) {
    _victim_links = std::move(links);
    for (int l : _victim_links) track_link_bins(l);
}

void Metrics::on_pause_event(int sw, std::uint8_t prio, bool pause,
                             double elephant_share, bool share_defined) {
    if (pause)
        ++_pauses;
    else
        ++_resumes;
    _pause_log.push_back(
        {_eq.now(), sw, prio, pause, elephant_share, share_defined});
}

void Metrics::on_cnm(FlowId flow, double fb_raw, std::uint8_t fb_quant,
                     double mice_share, bool share_defined) {
    _cnm_log.push_back(
        {_eq.now(), flow, fb_raw, fb_quant, mice_share, share_defined});
}

void Metrics::on_retransmit(std::uint32_t bytes) {
    _retransmitted_bytes += bytes;
}

void Metrics::on_timeout() { ++_timeouts; }

void Metrics::register_flow(FlowId id, FlowClass cls, std::uint64_t size,
                            SimTime arrival) {
    if (_flows.size() <= id) _flows.resize(id + 1);
    _flows[id] = FlowRecord{id, cls, size, arrival, -1};
}

void Metrics::on_flow_complete(FlowId id) {
    if (id < _flows.size() && _flows[id].complete < 0)
        _flows[id].complete = _eq.now();
}

void Metrics::record_queue_sample(int sw, std::uint64_t mice_bytes,
                                  std::uint64_t elephant_bytes) {
    _queue_log.push_back({_eq.now(), sw, mice_bytes, elephant_bytes});
}

void Metrics::set_switch_names(std::vector<std::string> names) {
    _switch_names = std::move(names);
}

double Metrics::link_utilization(const std::vector<int>& links) const {
    if (links.empty()) return 0.0;
    const double window = to_sec(_horizon - _warmup);
    if (window <= 0) return 0.0;
    double bits = 0, cap = 0;
    for (int l : links) {
        bits += 8.0 * static_cast<double>(_links[l].window_bytes);
        cap += static_cast<double>(_links[l].bps) * window;
    }
    return std::clamp(bits / cap, 0.0, 1.0);
}

FctStats Metrics::fct_stats(FlowClass cls) const {
    FctStats st;
    std::vector<double> fct;
    for (const auto& f : _flows) {
        if (f.cls != cls || f.arrival < _warmup) continue;
        if (f.size == 0) continue; // persistent flows have no FCT
        if (f.complete < 0) {
            ++st.incomplete;
            continue;
        }
        ++st.completed;
        fct.push_back(to_us(f.complete - f.arrival));
    }
    if (fct.empty()) return st;
    std::sort(fct.begin(), fct.end());
    double sum = 0;
    for (double v : fct) sum += v;
    st.mean_us = sum / static_cast<double>(fct.size());
    auto pct = [&](double q) {
        const auto idx = static_cast<std::size_t>(
            q * static_cast<double>(fct.size() - 1) + 0.5);
        return fct[idx];
    };
    st.p50_us = pct(0.50);
    st.p99_us = pct(0.99);
    st.max_us = fct.back();
    return st;
}

double Metrics::mean_fct_us(FlowClass cls) const {
    return fct_stats(cls).mean_us;
}

double Metrics::mean_fb_raw() const {
    double sum = 0;
    std::size_t n = 0;
    for (const auto& e : _cnm_log) {
        if (e.t < _warmup) continue;
        sum += e.fb_raw;
        ++n;
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

double Metrics::mean_fb_quant() const {
    double sum = 0;
    std::size_t n = 0;
    for (const auto& e : _cnm_log) {
        if (e.t < _warmup) continue;
        sum += e.fb_quant;
        ++n;
    }
    return n ? sum / static_cast<double>(n) : 0.0;
}

double Metrics::mean_mice_share_at_cnm() const {
    double sum = 0;
    std::size_t n = 0;
    for (const auto& e : _cnm_log) {
        if (e.t < _warmup || !e.share_defined) continue;
        sum += e.mice_share;
        ++n;
    }
    return n ? sum / static_cast<double>(n) : -1.0;
}

double Metrics::mean_elephant_share_at_pause() const {
    double sum = 0;
    std::size_t n = 0;
    for (const auto& e : _pause_log) {
        if (e.t < _warmup || !e.pause || !e.share_defined) continue;
        sum += e.elephant_share;
        ++n;
    }
    return n ? sum / static_cast<double>(n) : -1.0;
}

std::uint64_t Metrics::drop_frames(FlowClass cls) const {
    return totals(cls).frames_dropped;
}

std::uint64_t Metrics::drop_bytes(FlowClass cls) const {
    return totals(cls).bytes_dropped;
}

double Metrics::drop_ratio_frames() const {
    const std::uint64_t injected =
        _mice.frames_injected + _elephant.frames_injected;
    const std::uint64_t dropped =
        _mice.frames_dropped + _elephant.frames_dropped;
    return injected ? static_cast<double>(dropped) /
                          static_cast<double>(injected)
                    : 0.0;
}

bool Metrics::conservation_exact() const {
    for (FlowClass cls : {FlowClass::Mice, FlowClass::Elephant}) {
        const auto& t = totals(cls);
        const auto resident =
            static_cast<std::uint64_t>(resident_bytes(cls));
        if (t.bytes_injected != t.bytes_delivered + t.bytes_dropped + resident)
            return false;
    }
    return true;
}

nlohmann::json Metrics::summary() const {
    nlohmann::json j;
    auto cls_json = [&](const ClassTotals& t, FlowClass cls) {
        nlohmann::json c;
        c["bytes_injected"] = t.bytes_injected;
        c["bytes_delivered"] = t.bytes_delivered;
        c["bytes_dropped"] = t.bytes_dropped;
        c["frames_injected"] = t.frames_injected;
        c["frames_delivered"] = t.frames_delivered;
        c["frames_dropped"] = t.frames_dropped;
        c["bytes_resident"] = resident_bytes(cls);
        const FctStats st = fct_stats(cls);
        c["flows_completed"] = st.completed;
        c["flows_incomplete"] = st.incomplete;
        c["fct_mean_us"] = st.mean_us;
        c["fct_p50_us"] = st.p50_us;
        c["fct_p99_us"] = st.p99_us;
        c["fct_max_us"] = st.max_us;
        return c;
    };
    j["mice"] = cls_json(_mice, FlowClass::Mice);
    j["elephant"] = cls_json(_elephant, FlowClass::Elephant);
    j["conservation_exact"] = conservation_exact();
    j["pause_events"] = _pauses;
    j["resume_events"] = _resumes;
    nlohmann::json per_switch = nlohmann::json::object();
    for (const auto& e : _pause_log) {
        if (!e.pause) continue;
        const std::string name = e.sw < static_cast<int>(_switch_names.size())
                                     ? _switch_names[e.sw]
                                     : "sw" + std::to_string(e.sw);
        per_switch[name] = per_switch.value(name, 0ull) + 1ull;
    }
    j["pauses_by_switch"] = per_switch;
    j["cnm_count"] = _cnm_log.size();
    j["fb_mean_raw"] = mean_fb_raw();
    j["fb_mean_quant"] = mean_fb_quant();
    j["mice_share_at_cnm"] = mean_mice_share_at_cnm();
    j["elephant_share_at_pause"] = mean_elephant_share_at_pause();
    j["drop_ratio_frames"] = drop_ratio_frames();
    j["retransmitted_bytes"] = _retransmitted_bytes;
    j["timeouts"] = _timeouts;
    j["bottleneck_utilization"] =
        _bottleneck_links.empty() ? -1.0 : link_utilization(_bottleneck_links);
    j["victim_utilization"] =
        _victim_links.empty() ? -1.0 : link_utilization(_victim_links);
    j["warmup_ms"] = to_sec(_warmup) * 1e3;
    j["horizon_ms"] = to_sec(_horizon) * 1e3;
    j["events_processed"] = _eq.processed();
    if (_seed) j["seed"] = *_seed;
    return j;
}

void Metrics::write_outputs(const std::string& dir) const {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    char buf[160];

    {
        std::ofstream out(fs::path(dir) / "fct.csv");
        out << "flow_id,class,size_bytes,arrival_ns,complete_ns,fct_us\n";
        for (const auto& f : _flows) {
            if (f.complete < 0) continue;
            std::snprintf(buf, sizeof buf, "%u,%s,%llu,%lld,%lld,%.3f\n", f.id,
                          to_string(f.cls),
                          static_cast<unsigned long long>(f.size),
                          static_cast<long long>(f.arrival / T_NS),
                          static_cast<long long>(f.complete / T_NS),
                          to_us(f.complete - f.arrival));
            out << buf;
        }
    }
    {
        std::ofstream out(fs::path(dir) / "throughput.csv");
        out << "bin_start_us,link,bits_per_s\n";
        const double bin_sec = to_sec(_bin);
        for (const auto& ls : _links) {
            if (!ls.binned) continue;
            for (std::size_t b = 0; b < ls.bins.size(); ++b) {
                std::snprintf(
                    buf, sizeof buf, "%.1f,%s,%lld\n",
                    to_us(static_cast<SimTime>(b) * _bin), ls.name.c_str(),
                    std::llround(8.0 * static_cast<double>(ls.bins[b]) /
                                 bin_sec));
                out << buf;
            }
        }
    }
    {
        std::ofstream out(fs::path(dir) / "queues.csv");
        out << "t_us,switch,class,bytes\n";
        for (const auto& q : _queue_log) {
            const std::string& name =
                q.sw < static_cast<int>(_switch_names.size())
                    ? _switch_names[q.sw]
                    : "sw" + std::to_string(q.sw);
            std::snprintf(buf, sizeof buf, "%.1f,%s,mice,%llu\n", to_us(q.t),
                          name.c_str(),
                          static_cast<unsigned long long>(q.mice_bytes));
            out << buf;
            std::snprintf(buf, sizeof buf, "%.1f,%s,elephant,%llu\n",
                          to_us(q.t), name.c_str(),
                          static_cast<unsigned long long>(q.elephant_bytes));
            out << buf;
        }
    }
    {
        std::ofstream out(fs::path(dir) / "pauses.csv");
        out << "t_us,switch,priority,kind\n";
        for (const auto& e : _pause_log) {
            const std::string name =
                e.sw < static_cast<int>(_switch_names.size())
                    ? _switch_names[e.sw]
                    : "sw" + std::to_string(e.sw);
            std::snprintf(buf, sizeof buf, "%.3f,%s,%d,%s\n", to_us(e.t),
                          name.c_str(), static_cast<int>(e.prio),
                          e.pause ? "pause" : "resume");
            out << buf;
        }
    }
    {
        std::ofstream out(fs::path(dir) / "fb.csv");
        out << "t_us,flow,fb_raw,fb_quant,mice_share\n";
        for (const auto& e : _cnm_log) {
            std::snprintf(buf, sizeof buf, "%.3f,%u,%.1f,%d,%.4f\n",
                          to_us(e.t), e.flow, e.fb_raw,
                          static_cast<int>(e.fb_quant),
                          e.share_defined ? e.mice_share : std::nan(""));
            out << buf;
        }
    }
    {
        std::ofstream out(fs::path(dir) / "summary.json");
        out << summary().dump(2) << '\n';
    }
}

} // namespace dcbsim
