#include <minimax/trajectory.hpp>
#include <minimax/errors.hpp>

#include <algorithm>

namespace minimax {

void Trajectory::push(IterationRecord record) {
    if (records_.empty() || record.worst() < records_[best_].worst())
        best_ = records_.size();
    records_.push_back(std::move(record));
}

std::size_t Trajectory::best_index() const {
    if (records_.empty())
        throw InvalidInputError("trajectory has no records");
    return best_;
}

const IterationRecord &Trajectory::best() const {
    return records_[best_index()];
}

std::vector<double> Trajectory::best_so_far() const {
    std::vector<double> out;
    out.reserve(records_.size());
    for (const auto &r : records_)
        out.push_back(out.empty() ? r.worst() : std::min(out.back(), r.worst()));
    return out;
}

} // namespace minimax
