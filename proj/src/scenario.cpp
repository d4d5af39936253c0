#include "dcbsim/scenario.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "dcbsim/pfc.hpp"

namespace dcbsim {
namespace {

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg) {
    if (line > 0)
        throw std::runtime_error("line " + std::to_string(line) + ": " + msg);
    throw std::runtime_error(msg);
}

double parse_double(const std::string& v, int line) {
    try {
        std::size_t used = 0;
        const double d = std::stod(v, &used);
        if (used != v.size()) fail(line, "trailing junk in number '" + v + "'");
        return d;
    } catch (const std::runtime_error&) {
        throw;
    } catch (...) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

std::uint64_t parse_u64(const std::string& v, int line) {
    std::uint64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        fail(line, "expected a nonnegative integer, got '" + v + "'");
    return out;
}

std::int64_t parse_i64(const std::string& v, int line) {
    std::int64_t out = 0;
    auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (ec != std::errc() || p != v.data() + v.size())
        fail(line, "expected an integer, got '" + v + "'");
    return out;
}

bool parse_bool(const std::string& v, int line) {
    const std::string s = lower(v);
    if (s == "true" || s == "1" || s == "on" || s == "yes") return true;
    if (s == "false" || s == "0" || s == "off" || s == "no") return false;
    fail(line, "expected a boolean, got '" + v + "'");
}

enum class Kind { Number, Flag, Text };

struct KeyDesc {
    std::string path; // "section.key", lowercase
    Kind kind;
    std::function<void(ScenarioConfig&, const std::string&, int)> set;
    std::function<std::string(const ScenarioConfig&)> get;
};

std::string fmt_double(double v) {
    std::ostringstream os;
    os << v;
    return os.str();
}

const std::vector<KeyDesc>& key_table() {
    static const std::vector<KeyDesc> table = [] {
        std::vector<KeyDesc> t;
        auto num = [&t](std::string path, auto setter, auto getter) {
            t.push_back({std::move(path), Kind::Number,
                         std::move(setter), std::move(getter)});
        };
        auto flag = [&t](std::string path, auto setter, auto getter) {
            t.push_back({std::move(path), Kind::Flag, std::move(setter),
                         std::move(getter)});
        };
        auto text = [&t](std::string path, auto setter, auto getter) {
            t.push_back({std::move(path), Kind::Text, std::move(setter),
                         std::move(getter)});
        };

        // [topology]
        num("topology.leaves",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.topo.leaves = static_cast<int>(parse_i64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.topo.leaves);
            });
        num("topology.spines",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.topo.spines = static_cast<int>(parse_i64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.topo.spines);
            });
        num("topology.hosts_per_leaf",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.topo.hosts_per_leaf = static_cast<int>(parse_i64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.topo.hosts_per_leaf);
            });
        num("topology.capacity_bps",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.topo.capacity_bps = parse_u64(v, l);
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.topo.capacity_bps);
            });
        num("topology.prop_delay_ns",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.topo.prop_delay = ns(parse_i64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.topo.prop_delay / T_NS);
            });
        num("topology.port_buffer_bytes",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.port_buffer_bytes = static_cast<std::uint32_t>(
                    parse_u64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.port_buffer_bytes);
            });

        // [traffic]
        text("traffic.pattern",
             [](ScenarioConfig& c, const std::string& v, int l) {
                 const std::string s = lower(v);
                 if (s == "many_to_one")
                     c.traffic.pattern = TrafficPattern::ManyToOne;
                 else if (s == "head_of_line")
                     c.traffic.pattern = TrafficPattern::HeadOfLine;
                 else if (s == "intra_rank")
                     c.traffic.pattern = TrafficPattern::IntraRank;
                 else if (s == "inter_rank")
                     c.traffic.pattern = TrafficPattern::InterRank;
                 else if (s == "poisson_background")
                     c.traffic.pattern = TrafficPattern::PoissonBackground;
                 else
                     fail(l, "unknown traffic pattern '" + v + "'");
             },
             [](const ScenarioConfig& c) -> std::string {
                 switch (c.traffic.pattern) {
                 case TrafficPattern::ManyToOne: return "many_to_one";
                 case TrafficPattern::HeadOfLine: return "head_of_line";
                 case TrafficPattern::IntraRank: return "intra_rank";
                 case TrafficPattern::InterRank: return "inter_rank";
                 case TrafficPattern::PoissonBackground:
                     return "poisson_background";
                 }
                 return "many_to_one";
             });
        text("traffic.mix",
             [](ScenarioConfig& c, const std::string& v, int l) {
                 const std::string s = lower(v);
                 if (s == "mice")
                     c.traffic.mix = TrafficMix::MiceOnly;
                 else if (s == "elephant")
                     c.traffic.mix = TrafficMix::ElephantOnly;
                 else if (s == "mixed")
                     c.traffic.mix = TrafficMix::Mixed;
                 else
                     fail(l, "unknown traffic mix '" + v + "'");
             },
             [](const ScenarioConfig& c) -> std::string {
                 switch (c.traffic.mix) {
                 case TrafficMix::MiceOnly: return "mice";
                 case TrafficMix::ElephantOnly: return "elephant";
                 case TrafficMix::Mixed: return "mixed";
                 }
                 return "mixed";
             });
        num("traffic.mice_load",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.traffic.mice_load = parse_double(v, l);
            },
            [](const ScenarioConfig& c) {
                return fmt_double(c.traffic.mice_load);
            });
        text("traffic.mice_dist",
             [](ScenarioConfig& c, const std::string& v, int l) {
                 const std::string s = lower(v);
                 if (s == "uniform")
                     c.traffic.mice_dist = MiceSizeDist::Uniform;
                 else if (s == "exponential")
                     c.traffic.mice_dist = MiceSizeDist::Exponential;
                 else if (s == "fixed")
                     c.traffic.mice_dist = MiceSizeDist::Fixed;
                 else
                     fail(l, "unknown mice size distribution '" + v + "'");
             },
             [](const ScenarioConfig& c) -> std::string {
                 switch (c.traffic.mice_dist) {
                 case MiceSizeDist::Uniform: return "uniform";
                 case MiceSizeDist::Exponential: return "exponential";
                 case MiceSizeDist::Fixed: return "fixed";
                 }
                 return "uniform";
             });
        num("traffic.mice_min_bytes",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.traffic.mice_min = parse_u64(v, l);
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.traffic.mice_min);
            });
        num("traffic.mice_max_bytes",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.traffic.mice_max = parse_u64(v, l);
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.traffic.mice_max);
            });
        num("traffic.mice_mean_bytes",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.traffic.mice_mean = parse_double(v, l);
            },
            [](const ScenarioConfig& c) {
                return fmt_double(c.traffic.mice_mean);
            });
        num("traffic.elephants_per_host",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.traffic.elephants_per_host =
                    static_cast<int>(parse_i64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.traffic.elephants_per_host);
            });
        num("traffic.elephant_size_bytes",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.traffic.elephant_size = parse_u64(v, l);
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.traffic.elephant_size);
            });
        flag("traffic.hol_incast",
             [](ScenarioConfig& c, const std::string& v, int l) {
                 c.traffic.hol_incast = parse_bool(v, l);
             },
             [](const ScenarioConfig& c) {
                 return std::string(c.traffic.hol_incast ? "true" : "false");
             });
        num("traffic.hol_victims_per_host",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.traffic.hol_victims_per_host =
                    static_cast<int>(parse_i64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.traffic.hol_victims_per_host);
            });
        num("traffic.query_period_us",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.traffic.query_period = us(parse_i64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.traffic.query_period / T_US);
            });
        num("traffic.background_elephants",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.traffic.background_elephants =
                    static_cast<int>(parse_i64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.traffic.background_elephants);
            });
        num("traffic.seed",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.traffic.seed = parse_u64(v, l);
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.traffic.seed);
            });

        // [flow_control]
        flag("flow_control.pfc.enabled",
             [](ScenarioConfig& c, const std::string& v, int l) {
                 c.pfc.enabled = parse_bool(v, l);
             },
             [](const ScenarioConfig& c) {
                 return std::string(c.pfc.enabled ? "true" : "false");
             });
        num("flow_control.pfc.k1",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.pfc.k1 = static_cast<std::uint32_t>(parse_u64(v, l));
            },
            [](const ScenarioConfig& c) { return std::to_string(c.pfc.k1); });
        num("flow_control.pfc.k2",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.pfc.k2 = static_cast<std::uint32_t>(parse_u64(v, l));
            },
            [](const ScenarioConfig& c) { return std::to_string(c.pfc.k2); });
        num("flow_control.pfc.headroom",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.pfc.headroom = static_cast<std::uint32_t>(parse_u64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.pfc.headroom);
            });
        flag("flow_control.pfc.elephant",
             [](ScenarioConfig& c, const std::string& v, int l) {
                 c.pfc.elephant = parse_bool(v, l);
             },
             [](const ScenarioConfig& c) {
                 return std::string(c.pfc.elephant ? "true" : "false");
             });
        flag("flow_control.qcn.enabled",
             [](ScenarioConfig& c, const std::string& v, int l) {
                 c.qcn.enabled = parse_bool(v, l);
             },
             [](const ScenarioConfig& c) {
                 return std::string(c.qcn.enabled ? "true" : "false");
             });
        num("flow_control.qcn.q_eq",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.qcn.q_eq = static_cast<std::uint32_t>(parse_u64(v, l));
            },
            [](const ScenarioConfig& c) { return std::to_string(c.qcn.q_eq); });
        num("flow_control.qcn.w",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.qcn.w = parse_double(v, l);
            },
            [](const ScenarioConfig& c) { return fmt_double(c.qcn.w); });
        num("flow_control.qcn.gd",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.qcn.gd = parse_double(v, l);
            },
            [](const ScenarioConfig& c) { return fmt_double(c.qcn.gd); });
        num("flow_control.qcn.sample_interval",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.qcn.sample_interval =
                    static_cast<std::uint32_t>(parse_u64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.qcn.sample_interval);
            });
        num("flow_control.qcn.sample_jitter",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.qcn.sample_jitter = parse_double(v, l);
            },
            [](const ScenarioConfig& c) {
                return fmt_double(c.qcn.sample_jitter);
            });
        num("flow_control.qcn.fb_max",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.qcn.fb_max = static_cast<int>(parse_i64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.qcn.fb_max);
            });
        num("flow_control.qcn.byte_counter",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.qcn.byte_counter = parse_u64(v, l);
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.qcn.byte_counter);
            });
        num("flow_control.qcn.timer_ms",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.qcn.timer_ms = parse_double(v, l);
            },
            [](const ScenarioConfig& c) { return fmt_double(c.qcn.timer_ms); });
        num("flow_control.qcn.r_ai_mbps",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.qcn.r_ai_mbps = parse_double(v, l);
            },
            [](const ScenarioConfig& c) {
                return fmt_double(c.qcn.r_ai_mbps);
            });
        num("flow_control.qcn.min_rate_mbps",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.qcn.min_rate_mbps = parse_double(v, l);
            },
            [](const ScenarioConfig& c) {
                return fmt_double(c.qcn.min_rate_mbps);
            });
        num("flow_control.qcn.fast_recovery_stages",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.qcn.fast_recovery_stages =
                    static_cast<int>(parse_i64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.qcn.fast_recovery_stages);
            });
        text("flow_control.transport",
             [](ScenarioConfig& c, const std::string& v, int l) {
                 const std::string s = lower(v);
                 if (s == "none")
                     c.transport.kind = ElephantControl::None;
                 else if (s == "tcp")
                     c.transport.kind = ElephantControl::Tcp;
                 else if (s == "dctcp")
                     c.transport.kind = ElephantControl::Dctcp;
                 else
                     fail(l, "unknown transport '" + v + "'");
             },
             [](const ScenarioConfig& c) -> std::string {
                 switch (c.transport.kind) {
                 case ElephantControl::Tcp: return "tcp";
                 case ElephantControl::Dctcp: return "dctcp";
                 default: return "none";
                 }
             });
        num("flow_control.tcp.iw",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.transport.tcp_iw = static_cast<std::uint32_t>(
                    parse_u64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.transport.tcp_iw);
            });
        num("flow_control.tcp.min_rto_us",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.transport.tcp_min_rto_us = parse_double(v, l);
            },
            [](const ScenarioConfig& c) {
                return fmt_double(c.transport.tcp_min_rto_us);
            });
        num("flow_control.dctcp.g",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.transport.dctcp_g = parse_double(v, l);
            },
            [](const ScenarioConfig& c) {
                return fmt_double(c.transport.dctcp_g);
            });
        num("flow_control.dctcp.ecn_threshold",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.transport.ecn_threshold =
                    static_cast<std::uint32_t>(parse_u64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.transport.ecn_threshold);
            });

        // [isolation]
        text("isolation.mode",
             [](ScenarioConfig& c, const std::string& v, int l) {
                 const std::string s = lower(v);
                 if (s == "mixed")
                     c.mode = IsolationMode::Mixed;
                 else if (s == "isolated_strict")
                     c.mode = IsolationMode::IsolatedStrict;
                 else if (s == "isolated_ets")
                     c.mode = IsolationMode::IsolatedEts;
                 else
                     fail(l, "unknown isolation mode '" + v + "'");
             },
             [](const ScenarioConfig& c) -> std::string {
                 switch (c.mode) {
                 case IsolationMode::Mixed: return "mixed";
                 case IsolationMode::IsolatedStrict: return "isolated_strict";
                 case IsolationMode::IsolatedEts: return "isolated_ets";
                 }
                 return "mixed";
             });
        num("isolation.boundary_bytes",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.boundary_bytes = parse_u64(v, l);
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.boundary_bytes);
            });
        num("isolation.mice_share",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.mice_share = parse_double(v, l);
            },
            [](const ScenarioConfig& c) { return fmt_double(c.mice_share); });
        num("isolation.mice_buffer_bytes",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.mice_buffer_bytes =
                    static_cast<std::uint32_t>(parse_u64(v, l));
            },
            [](const ScenarioConfig& c) {
                return std::to_string(c.mice_buffer_bytes);
            });

        // [sim]
        num("sim.horizon_ms",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.horizon_ms = parse_double(v, l);
            },
            [](const ScenarioConfig& c) { return fmt_double(c.horizon_ms); });
        num("sim.warmup_ms",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.warmup_ms = parse_double(v, l);
            },
            [](const ScenarioConfig& c) { return fmt_double(c.warmup_ms); });
        num("sim.seed",
            [](ScenarioConfig& c, const std::string& v, int l) {
                c.seed = parse_u64(v, l);
            },
            [](const ScenarioConfig& c) { return std::to_string(c.seed); });
        text("sim.out_dir",
             [](ScenarioConfig& c, const std::string& v, int) {
                 c.out_dir = v;
             },
             [](const ScenarioConfig& c) { return c.out_dir; });
        return t;
    }();
    return table;
}

const KeyDesc* find_key(const std::string& path) {
    for (const auto& k : key_table())
        if (k.path == path) return &k;
    return nullptr;
}

} // namespace

ScenarioConfig parse_scenario(const std::string& text) {
    ScenarioConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const std::string s = trim(line);
        if (s.empty() || s[0] == '#' || s[0] == ';') continue;
        if (s.front() == '[') {
            if (s.back() != ']') fail(lineno, "unterminated section header");
            section = lower(trim(s.substr(1, s.size() - 2)));
            if (section != "topology" && section != "traffic" &&
                section != "flow_control" && section != "isolation" &&
                section != "sim")
                fail(lineno, "unknown section '" + section + "'");
            continue;
        }
        const auto eq = s.find('=');
        if (eq == std::string::npos)
            fail(lineno, "expected key=value, got '" + s + "'");
        const std::string key = lower(trim(s.substr(0, eq)));
        const std::string value = trim(s.substr(eq + 1));
        if (section.empty()) fail(lineno, "key outside any [section]");
        const KeyDesc* desc = find_key(section + "." + key);
        if (!desc)
            fail(lineno, "unknown key '" + key + "' in [" + section + "]");
        desc->set(cfg, value, lineno);
    }
    validate_scenario(cfg);
    return cfg;
}

std::string serialize_scenario(const ScenarioConfig& cfg) {
    std::ostringstream out;
    std::string current;
    for (const auto& k : key_table()) {
        const auto dot = k.path.find('.');
        const std::string section = k.path.substr(0, dot);
        if (section != current) {
            if (!current.empty()) out << '\n';
            out << '[' << section << "]\n";
            current = section;
        }
        out << k.path.substr(dot + 1) << '=' << k.get(cfg) << '\n';
    }
    return out.str();
}

void apply_override(ScenarioConfig& cfg, const std::string& key,
                    const std::string& value, bool numeric_only) {
    const std::string path = lower(trim(key));
    const KeyDesc* desc = find_key(path);
    if (!desc) throw std::runtime_error("unknown key '" + key + "'");
    if (numeric_only && desc->kind == Kind::Text)
        throw std::runtime_error("key '" + key +
                                 "' is not a sweepable scalar");
    desc->set(cfg, trim(value), 0);
}

void validate_scenario(const ScenarioConfig& cfg) {
    auto check = [](bool ok, const std::string& msg) {
        if (!ok) throw std::runtime_error("invalid scenario: " + msg);
    };
    check(cfg.topo.leaves >= 1 && cfg.topo.spines >= 1 &&
              cfg.topo.hosts_per_leaf >= 1,
          "topology counts must be >= 1");
    check(cfg.topo.capacity_bps > 0, "capacity must be positive");
    check(cfg.topo.prop_delay >= 0, "propagation delay must be >= 0");
    check(cfg.traffic.mice_load >= 0.0 && cfg.traffic.mice_load <= 1.0,
          "traffic.mice_load must lie in [0, 1]");
    check(cfg.traffic.mice_min > 0 &&
              cfg.traffic.mice_min <= cfg.traffic.mice_max,
          "mice size bounds must satisfy 0 < min <= max");
    check(cfg.traffic.elephants_per_host >= 0 &&
              cfg.traffic.hol_victims_per_host >= 0 &&
              cfg.traffic.background_elephants >= 0,
          "flow counts must be >= 0");
    check(cfg.boundary_bytes >= 10240 && cfg.boundary_bytes <= 102400,
          "isolation.boundary_bytes must lie in [10KB, 100KB]");
    check(cfg.mice_share >= 0.0 && cfg.mice_share <= 1.0,
          "isolation.mice_share must lie in [0, 1]");
    if (cfg.mode != IsolationMode::Mixed)
        check(cfg.mice_buffer_bytes > 0 &&
                  cfg.mice_buffer_bytes < cfg.port_buffer_bytes,
              "mice buffer must leave room for the elephant partition");

    if (cfg.pfc.enabled) {
        const std::uint32_t part = cfg.mode == IsolationMode::Mixed
                                       ? cfg.port_buffer_bytes
                                       : cfg.mice_buffer_bytes;
        check(cfg.resolved_k2() < cfg.pfc.k1, "PFC needs K2 < K1");
        check(cfg.pfc.k1 + cfg.pfc.headroom <= part,
              "PFC K1 + headroom must fit the class partition");
        check(pfc_headroom_sufficient(cfg.pfc.headroom, cfg.topo.capacity_bps,
                                      cfg.topo.prop_delay, MTU_BYTES),
              "PFC headroom cannot absorb one round trip of in-flight data");
    }
    check(!(cfg.qcn.enabled && cfg.transport.kind != ElephantControl::None),
          "qcn and an end-to-end transport cannot both control the "
          "elephant class");
    check(cfg.qcn.w > 0, "qcn.w must be positive");
    check(cfg.qcn.gd > 0, "qcn.gd must be positive");
    check(cfg.qcn.fb_max >= 1 && cfg.qcn.fb_max <= 63,
          "qcn.fb_max must lie in [1, 63]");
    check(cfg.qcn.sample_jitter >= 0.0 && cfg.qcn.sample_jitter < 1.0,
          "qcn.sample_jitter must lie in [0, 1)");
    check(cfg.qcn.sample_interval > 0, "qcn.sample_interval must be positive");
    check(cfg.qcn.r_ai_mbps > 0 && cfg.qcn.min_rate_mbps > 0,
          "qcn rates must be positive");
    check(cfg.transport.tcp_iw >= 1, "tcp.iw must be >= 1");
    check(cfg.transport.tcp_min_rto_us > 0, "tcp.min_rto_us must be positive");
    check(cfg.transport.dctcp_g > 0 && cfg.transport.dctcp_g <= 1,
          "dctcp.g must lie in (0, 1]");
    check(cfg.horizon_ms > 0, "sim.horizon_ms must be positive");
    check(cfg.warmup_ms >= 0 && cfg.warmup_ms < cfg.horizon_ms,
          "sim.warmup_ms must lie in [0, horizon)");
}

} // namespace dcbsim
