#include "dcbsim/topology.hpp"

#include <stdexcept>

namespace dcbsim {

Fabric::Fabric(EventQueue& eq, Metrics& metrics, const TopologyConfig& topo,
               const SwitchConfig& sw_cfg, std::uint64_t seed)
    : _topo(topo) {
    if (topo.leaves < 1 || topo.spines < 1 || topo.hosts_per_leaf < 1)
        throw std::invalid_argument("topology counts must be >= 1");

    const int hpl = topo.hosts_per_leaf;
    for (int h = 0; h < topo.total_hosts(); ++h)
        _hosts.push_back(std::make_unique<HostDevice>(
            eq, metrics, static_cast<HostId>(h), "h" + std::to_string(h)));
    for (int l = 0; l < topo.leaves; ++l)
        _leaves.push_back(std::make_unique<SwitchDevice>(
            eq, metrics, l, "leaf" + std::to_string(l), sw_cfg,
            derive_seed(seed, 0x6c656166u, l)));
    for (int s = 0; s < topo.spines; ++s)
        _spines.push_back(std::make_unique<SwitchDevice>(
            eq, metrics, topo.leaves + s, "spine" + std::to_string(s), sw_cfg,
            derive_seed(seed, 0x7370696eu, s)));

    auto mk = [&](const std::string& name) {
        return std::make_unique<Channel>(eq, metrics, name, topo.capacity_bps,
                                         topo.prop_delay);
    };

    // access cables; leaf port k == local host index k
    for (int h = 0; h < topo.total_hosts(); ++h) {
        const int l = topo.leaf_of(h);
        _host_up.push_back(mk("h" + std::to_string(h) + "->leaf" +
                              std::to_string(l)));
        _host_down.push_back(mk("leaf" + std::to_string(l) + "->h" +
                                std::to_string(h)));
        const PortId leaf_port = _leaves[l]->attach_port(_host_down[h].get());
        _host_up[h]->connect(_leaves[l].get(), leaf_port);
        _host_down[h]->connect(_hosts[h].get(), 0);
        _hosts[h]->attach(_host_up[h].get());
    }

    // fabric cables; leaf port hpl+s toward spine s, spine port l toward leaf l
    _leaf_up.resize(static_cast<std::size_t>(topo.leaves) * topo.spines);
    _spine_down.resize(static_cast<std::size_t>(topo.spines) * topo.leaves);
    for (int l = 0; l < topo.leaves; ++l) {
        for (int s = 0; s < topo.spines; ++s) {
            auto up = mk("leaf" + std::to_string(l) + "->spine" +
                         std::to_string(s));
            _leaf_up[static_cast<std::size_t>(l) * topo.spines + s] =
                std::move(up);
        }
    }
    for (int s = 0; s < topo.spines; ++s)
        for (int l = 0; l < topo.leaves; ++l)
            _spine_down[static_cast<std::size_t>(s) * topo.leaves + l] =
                mk("spine" + std::to_string(s) + "->leaf" + std::to_string(l));

    for (int l = 0; l < topo.leaves; ++l) {
        for (int s = 0; s < topo.spines; ++s) {
            const PortId leaf_port =
                _leaves[l]->attach_port(&leaf_uplink(l, s));
            if (leaf_port != static_cast<PortId>(hpl + s))
                throw std::logic_error("leaf port numbering broke");
            (void)leaf_port;
        }
    }
    for (int s = 0; s < topo.spines; ++s) {
        for (int l = 0; l < topo.leaves; ++l) {
            const PortId spine_port =
                _spines[s]->attach_port(&spine_downlink(s, l));
            leaf_uplink(l, s).connect(_spines[s].get(), spine_port);
            spine_downlink(s, l).connect(_leaves[l].get(),
                                         static_cast<PortId>(hpl + s));
        }
    }

    for (int l = 0; l < topo.leaves; ++l) {
        _leaves[l]->set_router([t = _topo, l](const Frame& f) -> PortId {
            if (t.leaf_of(f.dst) == l)
                return static_cast<PortId>(t.local_index(f.dst));
            return static_cast<PortId>(t.hosts_per_leaf +
                                       ecmp_spine(t, f.flow));
        });
    }
    for (int s = 0; s < topo.spines; ++s) {
        _spines[s]->set_router([t = _topo](const Frame& f) -> PortId {
            return static_cast<PortId>(t.leaf_of(f.dst));
        });
    }

    std::vector<std::string> names = switch_names();
    metrics.set_switch_names(names);
}

std::vector<std::string> Fabric::switch_names() const {
    std::vector<std::string> names;
    for (const auto& l : _leaves) names.push_back(l->name());
    for (const auto& s : _spines) names.push_back(s->name());
    return names;
}

} // namespace dcbsim
