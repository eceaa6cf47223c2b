#include "hlab/replicas.hpp"

#include <omp.h>

#include <atomic>
#include <stdexcept>

namespace hlab {

namespace {

std::atomic<Execution> g_execution{Execution::parallel};

} // namespace

std::vector<double> ReplicaTable::column(std::size_t j) const
{
    if (j >= width_) throw std::out_of_range("replica table column out of range");
    std::vector<double> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = data_[r * width_ + j];
    return out;
}

void set_workers(int workers)
{
    if (workers < 1) throw std::invalid_argument("worker count must be positive");
    omp_set_num_threads(workers);
}

int workers() { return omp_get_max_threads(); }

void set_default_execution(Execution exec) { g_execution = exec; }

Execution default_execution() { return g_execution; }

} // namespace hlab
