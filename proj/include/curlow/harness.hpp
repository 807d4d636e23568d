#pragma once

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <exception>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "curlow/bounds.hpp"

namespace curlow {

/// Worker count for trial loops: CURLOW_THREADS when set to a positive
/// integer, otherwise the machine's hardware concurrency.
inline unsigned trial_threads() {
    if (const char* env = std::getenv("CURLOW_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v > 0) return unsigned(v);
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

/// Runs fn(0), ..., fn(trials - 1) on up to `threads` workers. Results come
/// back in trial order. If any trial throws, the exception of the lowest
/// failing index is rethrown once every worker has stopped.
template <typename Fn>
auto run_trials(std::size_t trials, Fn&& fn, unsigned threads = trial_threads())
    -> std::vector<decltype(fn(std::size_t{}))> {
    using Result = decltype(fn(std::size_t{}));
    std::vector<std::optional<Result>> slots(trials);
    std::vector<std::exception_ptr> errors(trials);
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < trials; i = next++) {
            try {
                slots[i].emplace(fn(i));
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const unsigned workers = unsigned(std::min<std::size_t>(std::max(1u, threads), std::max<std::size_t>(trials, 1)));
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned w = 0; w < workers; ++w) pool.emplace_back(worker);
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    std::vector<Result> out;
    out.reserve(trials);
    for (auto& s : slots) out.push_back(std::move(*s));
    return out;
}

struct HoldsSummary {
    std::string name;
    std::size_t trials = 0;
    std::size_t premise_trials = 0;
    std::size_t holds_with_premises = 0;
    std::size_t holds_all = 0;

    /// Fraction of premise-satisfying trials where the bound held; NaN if none.
    double premise_rate() const {
        return premise_trials ? double(holds_with_premises) / double(premise_trials)
                              : std::numeric_limits<double>::quiet_NaN();
    }
    double overall_rate() const { return trials ? double(holds_all) / double(trials) : 0.0; }
};

/// Aggregates per-trial report lists by check name, in first-seen order.
inline std::vector<HoldsSummary> summarize(const std::vector<std::vector<BoundReport>>& per_trial) {
    std::vector<HoldsSummary> out;
    std::map<std::string, std::size_t> slot;
    for (const auto& reports : per_trial) {
        for (const auto& rep : reports) {
            auto [it, inserted] = slot.try_emplace(rep.name, out.size());
            if (inserted) out.push_back(HoldsSummary{rep.name});
            auto& s = out[it->second];
            ++s.trials;
            s.holds_all += rep.holds;
            if (rep.premises_met) {
                ++s.premise_trials;
                s.holds_with_premises += rep.holds;
            }
        }
    }
    return out;
}

}  // namespace curlow
