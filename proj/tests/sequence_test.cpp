#include <vector>

#include "doctest.h"
#include "seqvis/errors.hpp"
#include "seqvis/sequence.hpp"
#include "support/generators.hpp"
#include "support/reference.hpp"

using namespace seqvis;

namespace {

SequenceProposal with_scores(std::vector<ClassScoreVector> scores) {
    SequenceProposal s;
    s.frame_scores = std::move(scores);
    s.masks.assign(s.frame_scores.size(), rle_empty(2, 2));
    return s;
}

RleMask left_two_columns() {
    Bitmap b(4, 4);
    for (int r = 0; r < 4; ++r) b.at(r, 0) = b.at(r, 1) = 1;
    return rle_encode(b);
}

RleMask top_two_rows() {
    Bitmap b(4, 4);
    for (int c = 0; c < 4; ++c) b.at(0, c) = b.at(1, c) = 1;
    return rle_encode(b);
}

}  // namespace

TEST_CASE("sequence_score worked examples") {
    const SequenceProposal s = with_scores({{0.9, 0.1}, {0.7, 0.3}, {0.8, 0.2}});
    const SequenceScore r = sequence_score(s);
    CHECK(r.score == doctest::Approx(0.8));
    CHECK(r.class_index == 0);

    const SequenceProposal perfect = with_scores({{1.0, 0.0}, {1.0, 0.0}});
    CHECK(sequence_score(perfect).score == 1.0);
    CHECK(sequence_score(perfect).class_index == 0);

    const SequenceProposal single = with_scores({{0.2}, {0.4}});
    CHECK(sequence_score(single).score == doctest::Approx(0.3));
    CHECK(sequence_score(single).class_index == 0);
}

TEST_CASE("sequence_score tie picks the lowest class") {
    const SequenceProposal s = with_scores({{0.5, 0.7, 0.7}});
    CHECK(sequence_score(s).class_index == 1);
}

TEST_CASE("sequence_score is frame-permutation invariant") {
    Rng rng(61);
    for (int trial = 0; trial < 40; ++trial) {
        const int frames = static_cast<int>(rng.uniform_int(1, 8));
        std::vector<ClassScoreVector> scores(frames, ClassScoreVector(3));
        for (auto& f : scores) {
            for (auto& v : f) v = rng.uniform();
        }
        const SequenceScore base = sequence_score(with_scores(scores));
        for (int shuffle = 0; shuffle < 4; ++shuffle) {
            const int i = static_cast<int>(rng.uniform_int(0, frames - 1));
            const int j = static_cast<int>(rng.uniform_int(0, frames - 1));
            std::swap(scores[i], scores[j]);
        }
        const SequenceScore shuffled = sequence_score(with_scores(scores));
        CHECK(shuffled.score == doctest::Approx(base.score).epsilon(1e-12));
        CHECK(shuffled.class_index == base.class_index);
    }
}

TEST_CASE("sequence_iou worked examples") {
    SequenceProposal a, b;
    a.masks = {left_two_columns(), left_two_columns()};
    b.masks = {top_two_rows(), rle_empty(4, 4)};
    // frame 0: inter 4, union 12; frame 1: inter 0, union 8 -> 4/20
    CHECK(sequence_iou(a, b) == 4.0 / 20.0);

    // Not the mean of per-frame IoUs, which would be (1/3 + 0)/2 = 1/6.
    const double mean_of_ious =
        (frame_iou(a.masks[0], b.masks[0]) + frame_iou(a.masks[1], b.masks[1])) / 2.0;
    CHECK(mean_of_ious == doctest::Approx(1.0 / 6.0));
    CHECK(sequence_iou(a, b) != doctest::Approx(mean_of_ious));

    CHECK(sequence_iou(a, a) == 1.0);

    SequenceProposal c, d;
    c.masks = {left_two_columns(), rle_empty(4, 4)};
    d.masks = {rle_empty(4, 4), left_two_columns()};
    CHECK(sequence_iou(c, d) == 0.0);

    SequenceProposal short_seq;
    short_seq.masks = {left_two_columns()};
    CHECK_THROWS_AS(sequence_iou(a, short_seq), data_error);
}

TEST_CASE("sequence_iou matches the voxel brute force") {
    Rng rng(71);
    for (int trial = 0; trial < 300; ++trial) {
        const int frames = static_cast<int>(rng.uniform_int(1, 6));
        SequenceProposal a, b;
        a.masks = testgen::random_track(rng, frames, 8, 8);
        b.masks = testgen::random_track(rng, frames, 8, 8);
        const double iou = sequence_iou(a, b);
        CHECK(iou == reference::brute_sequence_iou(a.masks, b.masks));
        CHECK(iou == sequence_iou(b, a));
        CHECK(iou >= 0.0);
        CHECK(iou <= 1.0);
    }
}
