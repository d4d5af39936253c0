#ifndef DCBSIM_EVENT_QUEUE_HPP
#define DCBSIM_EVENT_QUEUE_HPP

#include <cstdint>
#include <functional>
#include <memory>
#include <queue>
#include <vector>

#include "dcbsim/time.hpp"

namespace dcbsim {

// Deterministic discrete-event core. Events fire in nondecreasing time
// order; ties break by insertion sequence number, giving one reproducible
// total order for a given schedule history. Single-threaded by design:
// one EventQueue drives one simulation instance.
class EventQueue {
    struct Record;

public:
    using Action = std::function<void()>;

    class Handle {
        friend class EventQueue;
        std::weak_ptr<Record> _rec;
    public:
        Handle() = default;
    };

    SimTime now() const { return _now; }
    std::uint64_t processed() const { return _processed; }

    // Schedules `action` at absolute time `t`. Scheduling in the past is a
    // programming error and throws; t == now() is allowed and fires within
    // the current step, after the running event returns.
    Handle schedule_at(SimTime t, Action action);
    Handle schedule_in(SimTime delay, Action action) {
        return schedule_at(_now + delay, std::move(action));
    }

    // True if the event had not fired and is now removed.
    bool cancel(const Handle& h);

    // Processes every event with fire_time <= t_end, then advances the
    // clock to t_end. Returns the number of events dispatched.
    std::uint64_t run_until(SimTime t_end);

private:
    struct Record {
        SimTime t;
        std::uint64_t seq;
        Action fn;
        bool dead = false; // fired or cancelled
    };
    struct Later {
        bool operator()(const std::shared_ptr<Record>& a,
                        const std::shared_ptr<Record>& b) const {
            if (a->t != b->t) return a->t > b->t;
            return a->seq > b->seq;
        }
    };

    std::priority_queue<std::shared_ptr<Record>,
                        std::vector<std::shared_ptr<Record>>, Later> _heap;
    SimTime _now = 0;
    std::uint64_t _next_seq = 0;
    std::uint64_t _processed = 0;
};

} // namespace dcbsim

#endif
