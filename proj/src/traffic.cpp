#include "dcbsim/traffic.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <random>
#include <sstream>
#include <stdexcept>

namespace dcbsim {
namespace {

constexpr std::uint64_t QUERY_RESPONSE_BYTES = 7885; // 7.7KB

// Flow ids are free identifiers, so the generator may pick them to pin a
// flow onto a chosen ECMP path (per-spine balance is part of the workload
// definition, not luck of the hash).
struct IdAlloc {
    FlowId next = 0;
    FlowId take() { return next++; }
    FlowId take_on_spine(const TopologyConfig& t, int spine) {
        while (ecmp_spine(t, next) != spine) ++next;
        return next++;
    }
};

double mean_mice_bytes(const TrafficConfig& cfg) {
    switch (cfg.mice_dist) {
    case MiceSizeDist::Uniform:
        return 0.5 * static_cast<double>(cfg.mice_min + cfg.mice_max);
    case MiceSizeDist::Exponential:
    case MiceSizeDist::Fixed:
        return cfg.mice_mean;
    }
    return cfg.mice_mean;
}

std::uint64_t draw_mice_bytes(const TrafficConfig& cfg, std::mt19937_64& rng) {
    switch (cfg.mice_dist) {
    case MiceSizeDist::Uniform: {
        std::uniform_int_distribution<std::uint64_t> d(cfg.mice_min,
                                                       cfg.mice_max);
        return d(rng);
    }
    case MiceSizeDist::Exponential: {
        std::exponential_distribution<double> d(1.0 / cfg.mice_mean);
        return std::max<std::uint64_t>(
            64, static_cast<std::uint64_t>(std::llround(d(rng))));
    }
    case MiceSizeDist::Fixed:
        return static_cast<std::uint64_t>(cfg.mice_mean);
    }
    return static_cast<std::uint64_t>(cfg.mice_mean);
}

// Poisson mice arrivals at cfg.mice_load of one link's capacity.
void add_mice(std::vector<FlowSpec>& out, IdAlloc& ids,
              const TrafficConfig& cfg, const TopologyConfig& topo,
              SimTime horizon, std::mt19937_64& rng, HostId receiver,
              bool has_receiver) {
    if (cfg.mice_load <= 0.0) return;
    const double bytes_per_s =
        cfg.mice_load * static_cast<double>(topo.capacity_bps) / 8.0;
    const double flows_per_s = bytes_per_s / mean_mice_bytes(cfg);
    std::exponential_distribution<double> gap(flows_per_s);
    std::uniform_int_distribution<int> pick_host(0, topo.total_hosts() - 1);

    double t_s = gap(rng);
    while (sec_to_ps(t_s) < horizon) {
        FlowSpec f;
        f.id = ids.take();
        f.arrival = sec_to_ps(t_s);
        f.size = draw_mice_bytes(cfg, rng);
        f.cls = FlowClass::Mice;
        if (has_receiver) {
            do f.src = static_cast<HostId>(pick_host(rng));
            while (f.src == receiver);
            f.dst = receiver;
        } else {
            f.src = static_cast<HostId>(pick_host(rng));
            do f.dst = static_cast<HostId>(pick_host(rng));
            while (f.dst == f.src);
        }
        out.push_back(f);
        t_s += gap(rng);
    }
}

Schedule gen_many_to_one(const TrafficConfig& cfg, const TopologyConfig& topo,
                         SimTime horizon, std::mt19937_64& rng) {
    Schedule s;
    s.receiver = static_cast<HostId>(topo.total_hosts() - 1);
    s.has_receiver = true;
    IdAlloc ids;

    if (cfg.mix != TrafficMix::MiceOnly) {
        int spin = 0;
        for (int h = 0; h < topo.total_hosts(); ++h) {
            if (static_cast<HostId>(h) == s.receiver) continue;
            for (int e = 0; e < cfg.elephants_per_host; ++e) {
                FlowSpec f;
                // remote senders alternate spines so the incast load uses
                // both fabric planes evenly
                f.id = topo.leaf_of(h) == topo.leaf_of(s.receiver)
                           ? ids.take()
                           : ids.take_on_spine(topo, spin++ % topo.spines);
                f.src = static_cast<HostId>(h);
                f.dst = s.receiver;
                f.size = cfg.elephant_size;
                f.cls = FlowClass::Elephant;
                s.flows.push_back(f);
            }
        }
    }
    if (cfg.mix != TrafficMix::ElephantOnly)
        add_mice(s.flows, ids, cfg, topo, horizon, rng, s.receiver, true);
    return s;
}

Schedule gen_head_of_line(const TrafficConfig& cfg, const TopologyConfig& topo,
                          SimTime horizon, std::mt19937_64& rng) {
    if (topo.leaves < 4)
        throw std::invalid_argument("head-of-line needs >= 4 leaves");
    Schedule s;
    s.receiver = topo.host_at(3, topo.hosts_per_leaf - 1);
    s.has_receiver = true;
    IdAlloc ids;

    // incast: every host on leaf0 and leaf1 blasts at the leaf3 receiver
    if (cfg.hol_incast) {
        int spin = 0;
        for (int l = 0; l < 2; ++l) {
            for (int k = 0; k < topo.hosts_per_leaf; ++k) {
                for (int e = 0; e < cfg.elephants_per_host; ++e) {
                    FlowSpec f;
                    f.id = ids.take_on_spine(topo, spin++ % topo.spines);
                    f.src = topo.host_at(l, k);
                    f.dst = s.receiver;
                    f.size = cfg.elephant_size;
                    f.cls = FlowClass::Elephant;
                    s.flows.push_back(f);
                }
            }
        }
    }

    // victims: leaf1 -> leaf2, one flow per spine per sender, so the
    // uncontended baseline saturates both leaf1 uplinks
    for (int k = 0; k < topo.hosts_per_leaf; ++k) {
        for (int v = 0; v < cfg.hol_victims_per_host; ++v) {
            FlowSpec f;
            f.id = ids.take_on_spine(topo, v % topo.spines);
            f.src = topo.host_at(1, k);
            f.dst = topo.host_at(2, (k + v) % topo.hosts_per_leaf);
            f.size = 0;
            f.cls = FlowClass::Elephant;
            s.flows.push_back(f);
        }
    }
    for (int sp = 0; sp < topo.spines; ++sp)
        s.victim_links.emplace_back(1, sp);

    if (cfg.mix == TrafficMix::Mixed)
        add_mice(s.flows, ids, cfg, topo, horizon, rng, s.receiver, true);
    return s;
}

void add_background_elephants(Schedule& s, IdAlloc& ids,
                              const TrafficConfig& cfg,
                              const TopologyConfig& topo,
                              std::mt19937_64& rng, bool cross_leaf) {
    std::uniform_int_distribution<int> pick_host(0, topo.total_hosts() - 1);
    for (int i = 0; i < cfg.background_elephants; ++i) {
        FlowSpec f;
        f.id = ids.take();
        f.src = static_cast<HostId>(pick_host(rng));
        do f.dst = static_cast<HostId>(pick_host(rng));
        while (f.dst == f.src ||
               (cross_leaf && topo.leaf_of(f.dst) == topo.leaf_of(f.src)));
        f.size = 0;
        f.cls = FlowClass::Elephant;
        s.flows.push_back(f);
    }
}

Schedule gen_intra_rank(const TrafficConfig& cfg, const TopologyConfig& topo,
                        SimTime horizon, std::mt19937_64& rng) {
    if (topo.hosts_per_leaf < 8)
        throw std::invalid_argument("intra-rank needs >= 8 hosts per leaf");
    Schedule s;
    IdAlloc ids;
    const SimTime period = cfg.query_period > 0 ? cfg.query_period : us(100);
    const HostId querier = topo.host_at(0, 0);

    for (SimTime t = 0; t < horizon; t += period) {
        for (int r = 1; r <= 7; ++r) {
            FlowSpec f;
            f.id = ids.take();
            f.src = topo.host_at(0, r);
            f.dst = querier;
            f.size = QUERY_RESPONSE_BYTES;
            f.arrival = t;
            f.cls = FlowClass::Mice;
            s.flows.push_back(f);
        }
    }
    add_background_elephants(s, ids, cfg, topo, rng, false);
    return s;
}

Schedule gen_inter_rank(const TrafficConfig& cfg, const TopologyConfig& topo,
                        SimTime horizon, std::mt19937_64& rng) {
    if (topo.leaves < 8)
        throw std::invalid_argument("inter-rank needs >= 8 leaves");
    Schedule s;
    IdAlloc ids;
    const SimTime period = cfg.query_period > 0 ? cfg.query_period : ms(1);
    std::uniform_int_distribution<int> pick_host(0, topo.total_hosts() - 1);

    for (SimTime t = 0; t < horizon; t += period) {
        for (int l = 0; l < topo.leaves; ++l) {
            for (int q = 0; q < 2 && q < topo.hosts_per_leaf; ++q) {
                const HostId querier = topo.host_at(l, q);
                for (int r = 0; r < 7; ++r) {
                    FlowSpec f;
                    f.id = ids.take();
                    do f.src = static_cast<HostId>(pick_host(rng));
                    while (topo.leaf_of(f.src) == l);
                    f.dst = querier;
                    f.size = QUERY_RESPONSE_BYTES;
                    f.arrival = t;
                    f.cls = FlowClass::Mice;
                    s.flows.push_back(f);
                }
            }
        }
    }
    add_background_elephants(s, ids, cfg, topo, rng, true);
    return s;
}

Schedule gen_poisson_background(const TrafficConfig& cfg,
                                const TopologyConfig& topo, SimTime horizon,
                                std::mt19937_64& rng) {
    Schedule s;
    IdAlloc ids;
    add_mice(s.flows, ids, cfg, topo, horizon, rng, 0, false);
    return s;
}

} // namespace

FlowClass classify(std::uint64_t size_bytes, std::uint64_t boundary) {
    return size_bytes < boundary ? FlowClass::Mice : FlowClass::Elephant;
}

std::uint8_t assign_priority(FlowClass cls, const IsolationPolicy& policy) {
    if (policy.mode == IsolationMode::Mixed) return 0;
    return cls == FlowClass::Mice ? 1 : 0;
}

FrameTag make_frame_tag(const FlowSpec& flow, const IsolationPolicy& policy) {
    if (!flow.unknown_size) {
        const FlowClass cls = flow.cls;
        const std::uint8_t prio = assign_priority(cls, policy);
        return [cls, prio](Frame& f) {
            f.cls = cls;
            f.priority = prio;
        };
    }
    // Promotion counter is shared across all frames of this flow.
    auto sent = std::make_shared<std::uint64_t>(0);
    const std::uint64_t boundary = policy.boundary;
    const std::uint8_t mice_prio = assign_priority(FlowClass::Mice, policy);
    const std::uint8_t eleph_prio = assign_priority(FlowClass::Elephant, policy);
    return [sent, boundary, mice_prio, eleph_prio](Frame& f) {
        const bool still_mice = *sent < boundary;
        f.cls = still_mice ? FlowClass::Mice : FlowClass::Elephant;
        f.priority = still_mice ? mice_prio : eleph_prio;
        *sent += f.size;
    };
}

Schedule generate(const TrafficConfig& cfg, const TopologyConfig& topo,
                  SimTime horizon) {
    std::mt19937_64 rng(derive_seed(cfg.seed, 0x74726166u,
                                    static_cast<int>(cfg.pattern)));
    Schedule s;
    switch (cfg.pattern) {
    case TrafficPattern::ManyToOne:
        s = gen_many_to_one(cfg, topo, horizon, rng);
        break;
    case TrafficPattern::HeadOfLine:
        s = gen_head_of_line(cfg, topo, horizon, rng);
        break;
    case TrafficPattern::IntraRank:
        s = gen_intra_rank(cfg, topo, horizon, rng);
        break;
    case TrafficPattern::InterRank:
        s = gen_inter_rank(cfg, topo, horizon, rng);
        break;
    case TrafficPattern::PoissonBackground:
        s = gen_poisson_background(cfg, topo, horizon, rng);
        break;
    }
    std::stable_sort(s.flows.begin(), s.flows.end(),
                     [](const FlowSpec& a, const FlowSpec& b) {
                         return a.arrival < b.arrival;
                     });
    return s;
}

std::string export_schedule(const std::vector<FlowSpec>& flows) {
    std::ostringstream out;
    for (const FlowSpec& f : flows) {
        out << f.id << ' ' << f.src << ' ' << f.dst << ' ' << f.size << ' '
            << f.arrival / T_NS << ' '
            << (f.unknown_size ? "unknown" : to_string(f.cls)) << '\n';
    }
    return out.str();
}

std::vector<FlowSpec> import_schedule(const std::string& text) {
    std::vector<FlowSpec> flows;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        FlowSpec f;
        std::int64_t arrival_ns = 0;
        std::string cls;
        if (!(ls >> f.id >> f.src >> f.dst >> f.size >> arrival_ns >> cls))
            throw std::runtime_error("schedule line " + std::to_string(lineno) +
                                     ": expected 6 columns");
        f.arrival = arrival_ns * T_NS;
        if (cls == "mice")
            f.cls = FlowClass::Mice;
        else if (cls == "elephant")
            f.cls = FlowClass::Elephant;
        else if (cls == "unknown") {
            f.cls = FlowClass::Mice; // starts MICE, promoted while sending
            f.unknown_size = true;
        } else
            throw std::runtime_error("schedule line " + std::to_string(lineno) +
                                     ": unknown class '" + cls + "'");
        flows.push_back(f);
    }
    return flows;
}

} // namespace dcbsim
