#include "seqvis/results_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "seqvis/errors.hpp"

using nlohmann::json;

namespace seqvis {

namespace {

json rle_to_json(const RleMask& m) {
    return json{{"size", {m.height, m.width}}, {"counts", m.counts}};
}

RleMask rle_from_json(const json& j, const std::string& path) {
    if (!j.is_object() || !j.contains("size") || !j.contains("counts")) {
        throw data_error(path + ": expected {\"size\":[H,W],\"counts\":[...]}");
    }
    RleMask m;
    m.height = j["size"].at(0).get<int>();
    m.width = j["size"].at(1).get<int>();
    m.counts = j["counts"].get<std::vector<std::uint32_t>>();
    std::uint64_t sum = 0;
    for (std::uint32_t c : m.counts) sum += c;
    if (sum != static_cast<std::uint64_t>(m.height) * m.width) {
        throw data_error(path + ": counts sum mismatch");
    }
    return m;
}

}  // namespace

std::string results_to_json(const ResultsFile& results) {
    json root;
    root["meta"] = results.meta;
    root["results"] = json::array();
    for (const ResultEntry& e : results.entries) {
        json je;
        je["video_id"] = e.video_id;
        je["key_frame"] = e.key_frame;
        je["slot"] = e.slot;
        je["category_id"] = e.category_id;
        je["score"] = e.score;
        je["segmentations"] = json::array();
        for (const RleMask& m : e.segmentations) {
            if (rle_is_empty(m))
                je["segmentations"].push_back(nullptr);
            else
                je["segmentations"].push_back(rle_to_json(m));
        }
        root["results"].push_back(std::move(je));
    }
    return root.dump(1) + "\n";
}

ResultsFile results_from_json(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw data_error("results json parse error: " + std::string(e.what()));
    }
    ResultsFile out;
    if (root.contains("meta")) {
        out.meta = root["meta"].get<std::map<std::string, std::string>>();
    }
    if (!root.contains("results") || !root["results"].is_array()) {
        throw data_error("results json: missing \"results\" array");
    }
    for (size_t i = 0; i < root["results"].size(); ++i) {
        const json& je = root["results"][i];
        const std::string where = "results[" + std::to_string(i) + "]";
        ResultEntry e;
        try {
            e.video_id = je.at("video_id").get<int>();
            e.key_frame = je.at("key_frame").get<int>();
            e.slot = je.at("slot").get<int>();
            e.category_id = je.at("category_id").get<int>();
            e.score = je.at("score").get<double>();
        } catch (const json::exception& ex) {
            throw data_error(where + ": " + ex.what());
        }
        const json& segs = je.at("segmentations");
        // Frame size comes from the first non-null RLE; nulls become empty
        // masks of that size.
        int h = 0, w = 0;
        for (const json& js : segs) {
            if (!js.is_null()) {
                h = js["size"].at(0).get<int>();
                w = js["size"].at(1).get<int>();
                break;
            }
        }
        for (size_t t = 0; t < segs.size(); ++t) {
            if (segs[t].is_null()) {
                e.segmentations.push_back(rle_empty(h, w));
            } else {
                e.segmentations.push_back(
                    rle_from_json(segs[t], where + ".segmentations[" + std::to_string(t) + "]"));
            }
        }
        out.entries.push_back(std::move(e));
    }
    return out;
}

void save_results(const ResultsFile& results, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write results file " + path);
    out << results_to_json(results);
}

ResultsFile load_results(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open results file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return results_from_json(ss.str());
}

std::vector<PredictedSequence> to_predictions(const ResultsFile& results) {
    std::vector<PredictedSequence> preds;
    preds.reserve(results.entries.size());
    for (const ResultEntry& e : results.entries) {
        preds.push_back({e.video_id, e.category_id, e.score, e.segmentations});
    }
    return preds;
}

std::string report_to_json(const EvalReport& report,
                           const std::map<std::string, std::string>& meta) {
    json root;
    root["meta"] = meta;
    root["ap"] = report.ap;
    root["ap50"] = report.ap50;
    root["ap75"] = report.ap75;
    root["ar1"] = report.ar1;
    root["ar10"] = report.ar10;
    root["ar100"] = report.ar100;
    root["j_mean"] = report.j_mean;
    root["f_mean"] = report.f_mean;
    root["jf"] = report.jf;
    root["per_video"] = json::array();
    for (const PerVideoJF& v : report.per_video) {
        root["per_video"].push_back({{"video_id", v.video_id},
                                     {"j", v.j},
                                     {"f", v.f},
                                     {"gt_count", v.gt_count}});
    }
    return root.dump(1) + "\n";
}

EvalReport report_from_json(const std::string& text, std::map<std::string, std::string>* meta) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::exception& e) {
        throw data_error("report json parse error: " + std::string(e.what()));
    }
    EvalReport r;
    try {
        if (meta && root.contains("meta")) {
            *meta = root["meta"].get<std::map<std::string, std::string>>();
        }
        r.ap = root.at("ap").get<double>();
        r.ap50 = root.at("ap50").get<double>();
        r.ap75 = root.at("ap75").get<double>();
        r.ar1 = root.at("ar1").get<double>();
        r.ar10 = root.at("ar10").get<double>();
        r.ar100 = root.at("ar100").get<double>();
        r.j_mean = root.at("j_mean").get<double>();
        r.f_mean = root.at("f_mean").get<double>();
        r.jf = root.at("jf").get<double>();
        for (const json& jv : root.at("per_video")) {
            r.per_video.push_back({jv.at("video_id").get<int>(), jv.at("j").get<double>(),
                                   jv.at("f").get<double>(), jv.at("gt_count").get<int>()});
        }
    } catch (const json::exception& e) {
        throw data_error("report json: " + std::string(e.what()));
    }
    return r;
}

void save_report(const EvalReport& report, const std::map<std::string, std::string>& meta,
                 const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw data_error("cannot write report file " + path);
    out << report_to_json(report, meta);
}

EvalReport load_report(const std::string& path, std::map<std::string, std::string>* meta) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw data_error("cannot open report file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return report_from_json(ss.str(), meta);
}

std::string format_report_table(const EvalReport& r) {
    char line[256];
    std::string out;
    out += "    AP  AP@50  AP@75   AR@1  AR@10      J      F    J&F\n";
    std::snprintf(line, sizeof(line), "%6.3f %6.3f %6.3f %6.3f %6.3f %6.3f %6.3f %6.3f\n", r.ap,
                  r.ap50, r.ap75, r.ar1, r.ar10, r.j_mean, r.f_mean, r.jf);
    out += line;
    return out;
}

std::string format_report_csv(const std::vector<std::pair<std::string, EvalReport>>& rows) {
    std::string out = "label,ap,ap50,ap75,ar1,ar10,ar100,j_mean,f_mean,jf\n";
    char line[320];
    for (const auto& [label, r] : rows) {
        std::snprintf(line, sizeof(line), "%s,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%.6f\n",
                      label.c_str(), r.ap, r.ap50, r.ap75, r.ar1, r.ar10, r.ar100, r.j_mean,
                      r.f_mean, r.jf);
        out += line;
    }
    return out;
}

}  // namespace seqvis
