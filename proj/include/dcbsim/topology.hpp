#ifndef DCBSIM_TOPOLOGY_HPP
#define DCBSIM_TOPOLOGY_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "dcbsim/host.hpp"
#include "dcbsim/rng.hpp"
#include "dcbsim/switch.hpp"

namespace dcbsim {

struct TopologyConfig {
    int leaves = 4;
    int spines = 2;
    int hosts_per_leaf = 4;
    std::uint64_t capacity_bps = 10'000'000'000ull;
    SimTime prop_delay = ns(1000);

    int total_hosts() const { return leaves * hosts_per_leaf; }
    int leaf_of(HostId h) const { return static_cast<int>(h) / hosts_per_leaf; }
    int local_index(HostId h) const {
        return static_cast<int>(h) % hosts_per_leaf;
    }
    HostId host_at(int leaf, int k) const {
        return static_cast<HostId>(leaf * hosts_per_leaf + k);
    }
};

// Static ECMP: flows hash onto one spine for their lifetime.
inline int ecmp_spine(const TopologyConfig& t, FlowId flow) {
    return static_cast<int>(mix64(flow) % static_cast<std::uint64_t>(t.spines));
}

// Full bipartite leaf-spine fabric of Fig.-1 shape, all links equal capacity.
// Leaf ports: [0, hosts_per_leaf) toward local hosts, then one per spine.
// Spine ports: one per leaf. Same-leaf pairs route through the leaf only.
class Fabric {
public:
    Fabric(EventQueue& eq, Metrics& metrics, const TopologyConfig& topo,
           const SwitchConfig& sw_cfg, std::uint64_t seed);

    const TopologyConfig& topo() const { return _topo; }
    HostDevice& host(HostId h) { return *_hosts[h]; }
    SwitchDevice& leaf(int i) { return *_leaves[i]; }
    SwitchDevice& spine(int i) { return *_spines[i]; }
    int num_hosts() const { return static_cast<int>(_hosts.size()); }
    int num_switches() const {
        return static_cast<int>(_leaves.size() + _spines.size());
    }

    Channel& host_uplink(HostId h) { return *_host_up[h]; }   // host -> leaf
    Channel& host_downlink(HostId h) { return *_host_down[h]; } // leaf -> host
    Channel& leaf_uplink(int leaf, int spine) { // leaf -> spine
        return *_leaf_up[leaf * _topo.spines + spine];
    }
    Channel& spine_downlink(int spine, int leaf) { // spine -> leaf
        return *_spine_down[spine * _topo.leaves + leaf];
    }

    std::vector<std::string> switch_names() const;

private:
    TopologyConfig _topo;
    std::vector<std::unique_ptr<HostDevice>> _hosts;
    std::vector<std::unique_ptr<SwitchDevice>> _leaves;
    std::vector<std::unique_ptr<SwitchDevice>> _spines;
    std::vector<std::unique_ptr<Channel>> _host_up, _host_down;
    std::vector<std::unique_ptr<Channel>> _leaf_up, _spine_down;
};

} // namespace dcbsim

#endif
