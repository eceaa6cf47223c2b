#pragma once

#include "hlab/stats.hpp"

#include <cstddef>
#include <exception>
#include <mutex>
#include <span>
#include <vector>

namespace hlab {

enum class Execution { serial, parallel };

// Per-replica results, one row of fixed width per replica index.
class ReplicaTable {
public:
    ReplicaTable(std::size_t rows, std::size_t width) : rows_(rows), width_(width), data_(rows * width, 0.0) {}

    std::size_t rows() const { return rows_; }
    std::size_t width() const { return width_; }
    std::span<double> row(std::size_t r) { return {data_.data() + r * width_, width_}; }
    std::span<const double> row(std::size_t r) const { return {data_.data() + r * width_, width_}; }
    std::vector<double> column(std::size_t j) const;
    Estimate column_estimate(std::size_t j) const { return estimate(column(j)); }
    const std::vector<double>& data() const { return data_; }

private:
    std::size_t rows_;
    std::size_t width_;
    std::vector<double> data_;
};

void set_workers(int workers);
int workers();
void set_default_execution(Execution exec);
Execution default_execution();

// Each replica writes only its own row, and every reduction afterwards walks
// rows in ascending order, so results do not depend on the worker count.
template <class Fn>
ReplicaTable run_replicas(std::size_t replicas, std::size_t width, Fn&& fn, Execution exec = default_execution())
{
    ReplicaTable table(replicas, width);
    if (exec == Execution::serial) {
        for (std::size_t r = 0; r < replicas; ++r) fn(r, table.row(r));
        return table;
    }
    std::exception_ptr failure;
    std::mutex guard;
    const auto count = static_cast<long long>(replicas);
#pragma omp parallel for schedule(dynamic, 64)
    for (long long r = 0; r < count; ++r) {
        try {
            fn(static_cast<std::size_t>(r), table.row(static_cast<std::size_t>(r)));
        } catch (...) {
            const std::lock_guard<std::mutex> lock(guard);
            if (!failure) failure = std::current_exception();
        }
    }
    if (failure) std::rethrow_exception(failure);
    return table;
}

} // namespace hlab
