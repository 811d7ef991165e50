#include "resetmon/tracker.hpp"

#include <algorithm>
#include <sstream>

#include "resetmon/errors.hpp"

namespace resetmon {

CandidateTracker::CandidateTracker(const ProductChain& product)
    : product_(&product),
      discovery_(product.num_states(), 0),
      fin_prefix_(product.pairs().size(), std::vector<std::uint32_t>{0}),
      inf_prefix_(product.pairs().size(), std::vector<std::uint32_t>{0}) {}

void CandidateTracker::reset() {
    for (StateId s : order_) discovery_[s] = 0;
    order_.clear();
    roots_.clear();
    heaps_.clear();
    forest_.clear();
    for (auto& v : fin_prefix_) v.resize(1);
    for (auto& v : inf_prefix_) v.resize(1);
    path_length_ = 0;
    has_candidate_ = false;
    birthday_ = 0;
    candidate_index_ = 0;
}

void CandidateTracker::step(StateId next) {
    if (next >= discovery_.size()) throw ProtocolError("state id out of range");
    if (path_length_ == 0) {
        ++path_length_;
        discover(next);
        last_ = next;
        return;
    }
    if (!product_->has_edge(last_, next))
        throw ProtocolError("no product edge " + std::to_string(last_) + " -> " +
                            std::to_string(next));
    ++path_length_;
    const StateId from = last_;
    last_ = next;

    const std::uint32_t d_next = discovery_[next];
    if (d_next == 0) {
        // (1) new state: new trivial component, no candidate
        discover(next);
        return;
    }
    if (discovery_[from] <= d_next || d_next >= roots_.back()) {
        // (2) the components are unchanged; next lies in the last component.
        if (!has_candidate_) {
            // The last component was the trivial {from}, so this is its
            // self-loop and it becomes a candidate.
            if (next != from) throw InternalError("case (2) edge leaving a trivial component");
            give_birth();
        }
        visit_in_last_component(next);
        return;
    }
    // (3) back edge into an earlier component: everything from the root of
    // next onwards collapses into one new candidate.
    merge_down_to(d_next);
    give_birth();
    visit_in_last_component(next);
}

void CandidateTracker::discover(StateId s) {
    order_.push_back(s);
    const auto d = static_cast<std::uint32_t>(order_.size());
    discovery_[s] = d;
    roots_.push_back(d);
    heaps_.push_back(forest_.make(VisitKey{0, 0, s}));
    ++counters_.root_inserts;
    ++counters_.heap_inserts;
    const auto pairs = product_->pairs();
    for (std::size_t k = 0; k < pairs.size(); ++k) {
        fin_prefix_[k].push_back(fin_prefix_[k].back() + (pairs[k].fin[s] ? 1u : 0u));
        inf_prefix_[k].push_back(inf_prefix_[k].back() + (pairs[k].inf[s] ? 1u : 0u));
    }
    has_candidate_ = false;
    birthday_ = 0;
}

void CandidateTracker::give_birth() {
    has_candidate_ = true;
    birthday_ = path_length_;
    ++candidate_index_;
    verdict_ = compute_verdict();
}

void CandidateTracker::visit_in_last_component(StateId s) {
    const std::uint32_t slot = discovery_[s] - 1;
    const VisitKey& old = forest_.key(slot);
    VisitKey updated{birthday_, 0, s};
    // The visit that gives birth to a candidate is not counted.
    if (birthday_ != path_length_) updated.count = old.birthday == birthday_ ? old.count + 1 : 1;
    heaps_.back() = forest_.update(heaps_.back(), slot, updated);
    ++counters_.key_updates;
}

void CandidateTracker::merge_down_to(std::uint32_t discovery) {
    // Fold every component whose root was discovered after `discovery` into
    // the one below it.
    while (roots_.back() > discovery) {
        const std::uint32_t heap = heaps_.back();
        roots_.pop_back();
        heaps_.pop_back();
        heaps_.back() = forest_.meld(heaps_.back(), heap);
        ++counters_.root_extracts;
        ++counters_.heap_merges;
    }
}

Verdict CandidateTracker::compute_verdict() const {
    const std::uint32_t first = roots_.back() - 1;
    const auto last = static_cast<std::uint32_t>(order_.size());
    for (std::size_t k = 0; k < fin_prefix_.size(); ++k) {
        const auto fin = fin_prefix_[k][last] - fin_prefix_[k][first];
        const auto inf = inf_prefix_[k][last] - inf_prefix_[k][first];
        if (fin == 0 && inf > 0) return Verdict::Good;
    }
    return Verdict::Bad;
}

std::uint64_t CandidateTracker::strength() const {
    if (!has_candidate_) return 0;
    const VisitKey& min = forest_.key(heaps_.back());
    return min.birthday == birthday_ ? min.count : 0;
}

std::size_t CandidateTracker::candidate_size() const noexcept {
    if (!has_candidate_) return 0;
    return order_.size() - roots_.back() + 1;
}

std::vector<StateId> CandidateTracker::candidate_members() const {
    if (!has_candidate_) return {};
    std::vector<StateId> members(order_.begin() + (roots_.back() - 1), order_.end());
    std::sort(members.begin(), members.end());
    return members;
}

std::optional<Candidate> CandidateTracker::candidate() const {
    if (!has_candidate_) return std::nullopt;
    return Candidate{candidate_members(), candidate_index_, strength(), verdict_};
}

std::optional<std::uint64_t> CandidateTracker::birthday() const noexcept {
    if (!has_candidate_) return std::nullopt;
    return birthday_;
}

std::optional<StateId> CandidateTracker::last_state() const noexcept {
    if (path_length_ == 0) return std::nullopt;
    return last_;
}

std::string CandidateTracker::debug_dump() const {
    std::ostringstream out;
    out << "tracker N=" << order_.size() << " length=" << path_length_ << " birthday=";
    if (has_candidate_)
        out << birthday_;
    else
        out << "undef";
    out << " index=" << candidate_index_ << " strength=" << strength() << '\n';
    for (std::size_t k = 0; k < roots_.size(); ++k) {
        const std::uint32_t begin = roots_[k] - 1;
        const auto end =
            k + 1 < roots_.size() ? roots_[k + 1] - 1 : static_cast<std::uint32_t>(order_.size());
        out << "root d=" << roots_[k] << " state=" << order_[begin] << " members=";
        for (std::uint32_t slot = begin; slot < end; ++slot) {
            const VisitKey& key = forest_.key(slot);
            out << (slot == begin ? "" : " ") << order_[slot] << '(';
            if (key.birthday == 0)
                out << "undef";
            else
                out << key.birthday;
            out << ',' << key.count << ')';
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace resetmon
