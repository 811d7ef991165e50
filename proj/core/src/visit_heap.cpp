#include "resetmon/visit_heap.hpp"

namespace resetmon {

std::uint32_t VisitHeapForest::make(const VisitKey& key) {
    nodes_.push_back(Node{key});
    return static_cast<std::uint32_t>(nodes_.size() - 1);
}

std::uint32_t VisitHeapForest::meld(std::uint32_t a, std::uint32_t b) {
    if (a == kNil) return b;
    if (b == kNil) return a;
    if (nodes_[b].key < nodes_[a].key) std::swap(a, b);
    Node& parent = nodes_[a];
    Node& child = nodes_[b];
    child.next = parent.child;
    if (parent.child != kNil) nodes_[parent.child].prev = b;
    child.prev = a;
    parent.child = b;
    parent.next = parent.prev = kNil;
    return a;
}

void VisitHeapForest::cut(std::uint32_t node) {
    Node& n = nodes_[node];
    Node& p = nodes_[n.prev];
    if (p.child == node)
        p.child = n.next;
    else
        p.next = n.next;
    if (n.next != kNil) nodes_[n.next].prev = n.prev;
    n.next = n.prev = kNil;
}

// Standard two-pass pairing of a node's children; the node is left childless.
std::uint32_t VisitHeapForest::combine_children(std::uint32_t node) {
    scratch_.clear();
    for (std::uint32_t c = nodes_[node].child; c != kNil;) {
        const std::uint32_t next = nodes_[c].next;
        nodes_[c].next = nodes_[c].prev = kNil;
        scratch_.push_back(c);
        c = next;
    }
    nodes_[node].child = kNil;
    if (scratch_.empty()) return kNil;

    std::size_t pairs = 0;
    for (std::size_t i = 0; i < scratch_.size(); i += 2) {
        scratch_[pairs++] =
            i + 1 < scratch_.size() ? meld(scratch_[i], scratch_[i + 1]) : scratch_[i];
    }
    std::uint32_t root = scratch_[pairs - 1];
    for (std::size_t i = pairs - 1; i-- > 0;) root = meld(scratch_[i], root);
    return root;
}

std::uint32_t VisitHeapForest::update(std::uint32_t root, std::uint32_t node, const VisitKey& key) {
    const bool decrease = key <= nodes_[node].key;
    if (node == root) {
        if (decrease) {
            nodes_[node].key = key;
            return root;
        }
        const std::uint32_t rest = combine_children(root);
        nodes_[root].key = key;
        return meld(rest, root);
    }
    cut(node);
    if (decrease) {
        nodes_[node].key = key;
        return meld(root, node);
    }
    const std::uint32_t rest = combine_children(node);
    nodes_[node].key = key;
    return meld(meld(root, rest), node);
}

}  // namespace resetmon
