#pragma once

#include <vector>

#include "seqvis/dataset.hpp"
#include "seqvis/soft_agg.hpp"

namespace seqvis {

// One remembered frame: its appearance and the instance masks it was
// segmented with. Masks at the key entry are raw detections and may overlap;
// appended entries come from argmax labeling and are disjoint.
struct MemoryEntry {
    int frame_index = 0;
    Frame appearance;
    std::vector<RleMask> masks;
};

// Ordered store of previously segmented frames read by propagators. The key
// entry is entry 0 and is never evicted; frame indices are unique.
class MemoryPool {
public:
    explicit MemoryPool(MemoryEntry key_entry) { entries_.push_back(std::move(key_entry)); }

    void append(MemoryEntry entry) {
        for (const MemoryEntry& e : entries_) {
            if (e.frame_index == entry.frame_index) return;  // already stored
        }
        entries_.push_back(std::move(entry));
    }

    // Drops everything but the key entry (used between propagation passes).
    void reset_to_key() { entries_.resize(1); }

    const MemoryEntry& key_entry() const { return entries_.front(); }
    const std::vector<MemoryEntry>& entries() const { return entries_; }
    int instance_count() const { return static_cast<int>(entries_.front().masks.size()); }

private:
    std::vector<MemoryEntry> entries_;
};

}  // namespace seqvis
