#include "dcbsim/event_queue.hpp"

#include <stdexcept>

namespace dcbsim {

EventQueue::Handle EventQueue::schedule_at(SimTime t, Action action) {
    if (t < _now)
        throw std::logic_error("EventQueue: schedule_at in the past");
    auto rec = std::make_shared<Record>();
    rec->t = t;
    rec->seq = _next_seq++;
    rec->fn = std::move(action);
    _heap.push(rec);
    Handle h;
    h._rec = rec;
    return h;
}

bool EventQueue::cancel(const Handle& h) {
    auto rec = h._rec.lock();
    if (!rec || rec->dead) return false;
    rec->dead = true;
    rec->fn = nullptr;
    return true;
}

std::uint64_t EventQueue::run_until(SimTime t_end) {
    if (t_end < _now)
        throw std::logic_error("EventQueue: run_until in the past");
    std::uint64_t count = 0;
    while (!_heap.empty() && _heap.top()->t <= t_end) {
        auto rec = _heap.top();
        _heap.pop();
        if (rec->dead) continue;
        _now = rec->t;
        rec->dead = true;
        Action fn = std::move(rec->fn);
        rec->fn = nullptr;
        fn();
        ++count;
        ++_processed;
    }
    _now = t_end;
    return count;
}

} // namespace dcbsim
