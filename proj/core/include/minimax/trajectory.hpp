#pragma once

#include <minimax/types.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace minimax {

/// One measured outer iteration: the returned pair (theta_t, alpha after the inner loop).
struct IterationRecord {
    std::size_t iter = 0;
    Vector theta;
    Vector alpha;
    double x_measure = 0.0;
    double y_measure = 0.0;
    double f_value = 0.0;
    // Regularized value f_lambda(theta_t, alpha_{t+1}); empty for the PL solver.
    std::optional<double> g_lambda_value;
    double step_norm = 0.0;
    std::int64_t wall_time_ns = 0;

    double worst() const { return x_measure > y_measure ? x_measure : y_measure; }
};

class Trajectory {
public:
    void push(IterationRecord record);

    const std::vector<IterationRecord> &records() const { return records_; }
    bool empty() const { return records_.empty(); }
    std::size_t size() const { return records_.size(); }

    /// Index of the record minimizing max(X, Y); first one on ties.
    std::size_t best_index() const;
    const IterationRecord &best() const;

    /// Running minimum of max(X, Y) over records.
    std::vector<double> best_so_far() const;

    /// Number of outer iterations actually executed (may exceed size() with a stride).
    std::size_t iterations = 0;
    std::vector<std::string> warnings;

private:
    std::vector<IterationRecord> records_;
    std::size_t best_ = 0;
};

/// Callback invoked once per measured record, in order. Used for streaming output.
using RecordObserver = std::function<void(const IterationRecord &)>;

} // namespace minimax
