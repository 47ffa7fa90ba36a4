#pragma once

#include <map>
#include <string>
#include <vector>

#include "seqvis/metrics.hpp"
#include "seqvis/rle.hpp"

namespace seqvis {

// One line of a results file: a reduced, classified sequence.
struct ResultEntry {
    int video_id = 0;
    int key_frame = 0;
    int slot = 0;
    int category_id = 0;
    double score = 0.0;
    std::vector<RleMask> segmentations;  // empty mask serialized as null
};

struct ResultsFile {
    std::map<std::string, std::string> meta;  // run configuration echo
    std::vector<ResultEntry> entries;
};

std::string results_to_json(const ResultsFile& results);
ResultsFile results_from_json(const std::string& text);
void save_results(const ResultsFile& results, const std::string& path);
ResultsFile load_results(const std::string& path);

std::vector<PredictedSequence> to_predictions(const ResultsFile& results);

std::string report_to_json(const EvalReport& report,
                           const std::map<std::string, std::string>& meta);
EvalReport report_from_json(const std::string& text, std::map<std::string, std::string>* meta);
void save_report(const EvalReport& report, const std::map<std::string, std::string>& meta,
                 const std::string& path);
EvalReport load_report(const std::string& path, std::map<std::string, std::string>* meta);

// Fixed-width summary table (AP, AP@50, AP@75, AR@1, AR@10, J, F, J&F).
std::string format_report_table(const EvalReport& report);

// CSV rows for a set of labeled reports (one row per report), e.g. a K sweep.
std::string format_report_csv(const std::vector<std::pair<std::string, EvalReport>>& rows);

}  // namespace seqvis
