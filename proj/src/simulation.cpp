#include "dcbsim/simulation.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dcbsim/event_queue.hpp"
#include "dcbsim/metrics.hpp"
#include "dcbsim/rng.hpp"
#include "dcbsim/sources.hpp"
#include "dcbsim/switch.hpp"
#include "dcbsim/topology.hpp"
#include "dcbsim/transport.hpp"

namespace dcbsim {
namespace {

// Map the scenario onto per-class switch behavior. Mixed mode runs one
// class carrying everything; isolation carves class 1 for mice with its
// own buffer partition and PFC, leaving class 0 to the elephants.
SwitchConfig make_switch_config(const ScenarioConfig& cfg) {
    const ElephantControl ctl = cfg.elephant_control();
    const bool isolated = cfg.mode != IsolationMode::Mixed;

    SwitchConfig sc;
    sc.num_classes = isolated ? 2 : 1;

    SwitchClassConfig c0;
    c0.partition = cfg.partition_bytes(FlowClass::Elephant);
    c0.pfc.enabled = cfg.pfc.enabled && (!isolated || cfg.pfc.elephant);
    c0.pfc.k1 = cfg.pfc.k1;
    c0.pfc.k2 = cfg.resolved_k2();
    c0.pfc.headroom = cfg.pfc.headroom;
    c0.qcn.enabled = (ctl == ElephantControl::Qcn);
    c0.qcn.q_eq = cfg.resolved_q_eq(c0.partition);
    c0.qcn.w = cfg.qcn.w;
    c0.qcn.sample_interval = cfg.qcn.sample_interval;
    c0.qcn.sample_jitter = cfg.qcn.sample_jitter;
    c0.qcn.fb_max = static_cast<std::uint8_t>(cfg.qcn.fb_max);
    c0.ecn_mark = (ctl == ElephantControl::Dctcp);
    c0.ecn_threshold = cfg.transport.ecn_threshold;
    sc.cls[0] = c0;

    if (isolated) {
        SwitchClassConfig c1;
        c1.partition = cfg.partition_bytes(FlowClass::Mice);
        c1.pfc.enabled = cfg.pfc.enabled;
        c1.pfc.k1 = cfg.pfc.k1;
        c1.pfc.k2 = cfg.resolved_k2();
        c1.pfc.headroom = cfg.pfc.headroom;
        c1.qcn.enabled = false;
        c1.ecn_mark = false;
        sc.cls[1] = c1;
        sc.scheduler = cfg.mode == IsolationMode::IsolatedEts
                           ? SchedulerKind::Ets
                           : SchedulerKind::Strict;
        sc.ets_weights[0] = 1.0 - cfg.mice_share;
        sc.ets_weights[1] = cfg.mice_share;
    }
    return sc;
}

QcnRpConfig make_rp_config(const ScenarioConfig& cfg) {
    QcnRpConfig rp;
    rp.gd = cfg.qcn.gd;
    rp.byte_counter = cfg.qcn.byte_counter;
    rp.timer_period = sec_to_ps(cfg.qcn.timer_ms * 1e-3);
    rp.fast_recovery_stages =
        static_cast<std::uint32_t>(cfg.qcn.fast_recovery_stages);
    rp.r_ai = cfg.qcn.r_ai_mbps * 1e6;
    rp.min_rate = cfg.qcn.min_rate_mbps * 1e6;
    return rp;
}

TcpConfig make_tcp_config(const ScenarioConfig& cfg) {
    TcpConfig tc;
    tc.iw_segments = cfg.transport.tcp_iw;
    tc.min_rto = sec_to_ps(cfg.transport.tcp_min_rto_us * 1e-6);
    return tc;
}

std::string sanitize_component(const std::string& v) {
    std::string s = v;
    for (char& c : s) {
        const auto u = static_cast<unsigned char>(c);
        if (!std::isalnum(u) && c != '.' && c != '-') c = '_';
    }
    return s.empty() ? std::string("value") : s;
}

std::string lower(std::string s) {
    for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return s;
}

} // namespace

RunResult run_scenario(const ScenarioConfig& cfg, const std::string& out_dir) {
    validate_scenario(cfg);

    EventQueue eq;
    Metrics metrics(eq, cfg.warmup(), cfg.horizon());
    metrics.set_run_info(cfg.seed);

    const SwitchConfig sw_cfg = make_switch_config(cfg);
    Fabric fabric(eq, metrics, cfg.topo, sw_cfg,
                  derive_seed(cfg.seed, 0x66616272u, 0));

    const Schedule sched = generate(cfg.traffic, cfg.topo, cfg.horizon());

    IsolationPolicy policy;
    policy.mode = cfg.mode;
    policy.boundary = cfg.boundary_bytes;
    policy.mice_share = cfg.mice_share;
    policy.mice_pfc = cfg.pfc.enabled;
    policy.elephant_pfc = cfg.pfc.elephant;
    policy.elephant_control = cfg.elephant_control();

    // Links of interest: the incast bottleneck, any HoL victim paths, and
    // every leaf uplink get binned throughput series.
    std::vector<int> binned;
    if (sched.has_receiver) {
        const int b = fabric.host_downlink(sched.receiver).link_id();
        metrics.set_bottleneck_links({b});
        binned.push_back(b);
    }
    if (!sched.victim_links.empty()) {
        std::vector<int> victims;
        victims.reserve(sched.victim_links.size());
        for (const auto& [leaf, spine] : sched.victim_links)
            victims.push_back(fabric.leaf_uplink(leaf, spine).link_id());
        metrics.set_victim_links(victims);
        binned.insert(binned.end(), victims.begin(), victims.end());
    }
    for (int l = 0; l < cfg.topo.leaves; ++l)
        for (int s = 0; s < cfg.topo.spines; ++s)
            binned.push_back(fabric.leaf_uplink(l, s).link_id());
    std::sort(binned.begin(), binned.end());
    binned.erase(std::unique(binned.begin(), binned.end()), binned.end());
    for (int id : binned) metrics.track_link_bins(id);

    const ElephantControl ctl = cfg.elephant_control();
    const QcnRpConfig rp = make_rp_config(cfg);
    const TcpConfig tcp = make_tcp_config(cfg);
    const DctcpConfig dctcp{cfg.transport.dctcp_g};

    // Reaction points live at the hosts, one per QCN-controlled class.
    for (int p = 0; p < sw_cfg.num_classes; ++p) {
        if (!sw_cfg.cls[p].qcn.enabled) continue;
        for (int h = 0; h < fabric.num_hosts(); ++h)
            fabric.host(h).enable_rp(static_cast<std::uint8_t>(p), rp);
    }

    std::vector<std::unique_ptr<Source>> sources;
    sources.reserve(sched.flows.size());
    for (const FlowSpec& fs : sched.flows) {
        metrics.register_flow(fs.id, fs.cls, fs.size, fs.arrival);
        const bool transport_flow =
            fs.cls == FlowClass::Elephant && (ctl == ElephantControl::Tcp ||
                                              ctl == ElephantControl::Dctcp);
        fabric.host(fs.dst).expect_flow(fs.id, fs.size, transport_flow);

        HostDevice& src = fabric.host(fs.src);
        FrameTag tag = make_frame_tag(fs, policy);
        std::unique_ptr<Source> s;
        if (fs.cls == FlowClass::Mice || ctl == ElephantControl::None ||
            ctl == ElephantControl::Qcn) {
            s = std::make_unique<BlastSource>(src, fs.id, fs.dst, fs.size,
                                              std::move(tag));
        } else if (ctl == ElephantControl::Tcp) {
            s = std::make_unique<TcpSender>(eq, src, metrics, fs.id, fs.dst,
                                            fs.size, std::move(tag), tcp);
        } else {
            s = std::make_unique<DctcpSender>(eq, src, metrics, fs.id, fs.dst,
                                              fs.size, std::move(tag), tcp,
                                              dctcp);
        }
        src.register_source(fs.id, s.get());
        Source* raw = s.get();
        eq.schedule_at(fs.arrival, [raw] { raw->start(); });
        sources.push_back(std::move(s));
    }

    // Queue-depth sampler, every 10us across all switches for the full run.
    const SimTime sample_period = us(10);
    const SimTime horizon = cfg.horizon();
    auto sampler = std::make_shared<std::function<void()>>();
    *sampler = [&eq, &metrics, &fabric, &cfg, sampler, sample_period,
                horizon]() {
        for (int l = 0; l < cfg.topo.leaves; ++l) {
            SwitchDevice& sw = fabric.leaf(l);
            metrics.record_queue_sample(sw.id(),
                                        sw.class_occupancy(FlowClass::Mice),
                                        sw.class_occupancy(FlowClass::Elephant));
        }
        for (int s = 0; s < cfg.topo.spines; ++s) {
            SwitchDevice& sw = fabric.spine(s);
            metrics.record_queue_sample(sw.id(),
                                        sw.class_occupancy(FlowClass::Mice),
                                        sw.class_occupancy(FlowClass::Elephant));
        }
        const SimTime next = eq.now() + sample_period;
        if (next <= horizon) eq.schedule_at(next, *sampler);
    };
    eq.schedule_at(0, *sampler);

    eq.run_until(horizon);

    RunResult r;
    r.summary = metrics.summary();

    const FctStats ms = metrics.fct_stats(FlowClass::Mice);
    const FctStats es = metrics.fct_stats(FlowClass::Elephant);
    r.mice_fct_mean_us = ms.mean_us;
    r.mice_fct_p99_us = ms.p99_us;
    r.mice_completed = ms.completed;
    r.elephant_fct_mean_us = es.mean_us;
    r.bottleneck_utilization = r.summary["bottleneck_utilization"];
    r.victim_utilization = r.summary["victim_utilization"];
    r.pause_events = metrics.pause_count();
    r.mice_drops = metrics.drop_frames(FlowClass::Mice);
    r.elephant_drops = metrics.drop_frames(FlowClass::Elephant);
    r.cnm_count = metrics.cnm_events().size();
    r.fb_mean_raw = metrics.mean_fb_raw();
    r.fb_mean_quant = metrics.mean_fb_quant();
    r.mice_share_at_cnm = metrics.mean_mice_share_at_cnm();
    r.drop_ratio = metrics.drop_ratio_frames();
    r.conservation = metrics.conservation_exact();

    const std::string dir = !out_dir.empty() ? out_dir : cfg.out_dir;
    if (!dir.empty()) metrics.write_outputs(dir);
    return r;
}

std::string sweep_table(const std::string& key,
                        const std::vector<SweepPoint>& points) {
    std::ostringstream out;
    out << "param,value,seed,mice_fct_mean_us,mice_fct_p99_us,"
           "elephant_fct_mean_us,bottleneck_utilization,victim_utilization,"
           "pause_events,cnm_count,fb_mean_quant,mice_share_at_cnm,"
           "mice_drops,elephant_drops,drop_ratio,conservation\n";
    char buf[256];
    for (const SweepPoint& p : points) {
        const RunResult& r = p.result;
        std::snprintf(buf, sizeof buf,
                      ",%llu,%.6g,%.6g,%.6g,%.6g,%.6g,%llu,%llu,%.6g,%.6g,"
                      "%llu,%llu,%.6g,%d\n",
                      static_cast<unsigned long long>(p.cfg.seed),
                      r.mice_fct_mean_us, r.mice_fct_p99_us,
                      r.elephant_fct_mean_us, r.bottleneck_utilization,
                      r.victim_utilization,
                      static_cast<unsigned long long>(r.pause_events),
                      static_cast<unsigned long long>(r.cnm_count),
                      r.fb_mean_quant, r.mice_share_at_cnm,
                      static_cast<unsigned long long>(r.mice_drops),
                      static_cast<unsigned long long>(r.elephant_drops),
                      r.drop_ratio, r.conservation ? 1 : 0);
        out << key << ',' << p.value << buf;
    }
    return out.str();
}

std::vector<SweepPoint> run_sweep(const ScenarioConfig& base,
                                  const std::string& key,
                                  const std::vector<std::string>& values,
                                  const std::string& out_dir) {
    if (values.empty()) throw std::runtime_error("sweep: no values given");

    // Build and validate every point up front so a bad value fails fast.
    std::vector<SweepPoint> points(values.size());
    const bool sweeping_seed = lower(key) == "sim.seed";
    for (std::size_t i = 0; i < values.size(); ++i) {
        points[i].value = values[i];
        points[i].cfg = base;
        points[i].cfg.out_dir.clear();
        apply_override(points[i].cfg, key, values[i], /*numeric_only=*/true);
        if (!sweeping_seed)
            points[i].cfg.seed = base.seed ^ static_cast<std::uint64_t>(i);
        validate_scenario(points[i].cfg);
    }

    const int n = static_cast<int>(points.size());
    std::string failure;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < n; ++i) {
        try {
            std::string dir;
            if (!out_dir.empty()) {
                dir = (std::filesystem::path(out_dir) /
                       sanitize_component(points[i].value))
                          .string();
            }
            points[i].result = run_scenario(points[i].cfg, dir);
        } catch (const std::exception& e) {
#pragma omp critical
            failure = e.what();
        }
    }
    if (!failure.empty()) throw std::runtime_error("sweep: " + failure);

    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        std::ofstream csv(std::filesystem::path(out_dir) / "sweep.csv");
        csv << sweep_table(key, points);
    }
    return points;
}

} // namespace dcbsim
