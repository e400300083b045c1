#include "pfano/json_io.hpp"

#include <fstream>

namespace pfano::io {

namespace {

int require_int(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_number_integer()) {
        throw ParseError(std::string("missing or non-integer field \"") +
                         key + "\"");
    }
    return j[key].get<int>();
}

std::vector<std::vector<int>> require_sets(const json& j, const char* key) {
    if (!j.contains(key) || !j[key].is_array()) {
        throw ParseError(std::string("missing or non-array field \"") + key +
                         "\"");
    }
    std::vector<std::vector<int>> out;
    for (const auto& row : j[key]) {
        if (!row.is_array()) {
            throw ParseError(std::string("field \"") + key +
                             "\" must be an array of arrays");
        }
        std::vector<int> s;
        for (const auto& v : row) {
            if (!v.is_number_integer()) {
                throw ParseError("set elements must be integers");
            }
            s.push_back(v.get<int>());
        }
        out.push_back(std::move(s));
    }
    return out;
}

}  // namespace

json matrix_to_json(const matrix::BlockMatrix& m) {
    json entries = json::array();
    for (int r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (int c = 0; c < m.cols(); ++c) row.push_back(m.at(r, c));
        entries.push_back(std::move(row));
    }
    return json{{"q", m.field().modulus()},
                {"t", m.block_width()},
                {"rows", m.rows()},
                {"blocks", m.num_blocks()},
                {"entries", std::move(entries)}};
}

matrix::BlockMatrix matrix_from_json(const json& j) {
    int q = require_int(j, "q");
    int t = require_int(j, "t");
    int rows = require_int(j, "rows");
    int blocks = require_int(j, "blocks");
    if (q < 2) throw ParseError("q must be at least 2");
    gf::PrimeField field(static_cast<std::uint32_t>(q));
    if (t < 1 || rows < 0 || blocks < 0) {
        throw ParseError("bad matrix dimensions");
    }
    matrix::BlockMatrix m(field, rows, t, blocks);
    if (!j.contains("entries") || !j["entries"].is_array() ||
        static_cast<int>(j["entries"].size()) != rows) {
        throw ParseError("\"entries\" must hold one array per row");
    }
    for (int r = 0; r < rows; ++r) {
        const auto& row = j["entries"][r];
        if (!row.is_array() || static_cast<int>(row.size()) != m.cols()) {
            throw ParseError("row " + std::to_string(r) +
                             " does not have blocks*t entries");
        }
        for (int c = 0; c < m.cols(); ++c) {
            if (!row[c].is_number_integer()) {
                throw ParseError("matrix entries must be integers");
            }
            long long v = row[c].get<long long>();
            if (v < 0 || v >= q) {
                throw ParseError("entry " + std::to_string(v) +
                                 " is not a canonical residue mod " +
                                 std::to_string(q));
            }
            m.set(r, c, static_cast<std::uint32_t>(v));
        }
    }
    return m;
}

json instance_to_json(const indexcoding::IndexCodingInstance& inst) {
    json interfering = json::array();
    for (const auto& b : inst.interfering) interfering.push_back(b);
    json j{{"family", indexcoding::family_name(inst.family)},
           {"m", inst.m},
           {"interfering", std::move(interfering)}};
    if (inst.family == indexcoding::Family::Custom) {
        j["p"] = nullptr;
    } else {
        j["p"] = inst.p;
    }
    return j;
}

indexcoding::IndexCodingInstance instance_from_json(const json& j) {
    if (!j.contains("family") || !j["family"].is_string()) {
        throw ParseError("missing \"family\"");
    }
    std::string fam = j["family"].get<std::string>();
    indexcoding::Family family;
    if (fam == "p-fano") {
        family = indexcoding::Family::PFano;
    } else if (fam == "p-nonfano") {
        family = indexcoding::Family::PNonFano;
    } else if (fam == "custom") {
        family = indexcoding::Family::Custom;
    } else {
        throw ParseError("unknown family \"" + fam + "\"");
    }
    int p = 0;
    if (family != indexcoding::Family::Custom) {
        if (!j.contains("p") || !j["p"].is_number_integer()) {
            throw ParseError("family instances need an integer \"p\"");
        }
        p = j["p"].get<int>();
    }
    int m = require_int(j, "m");
    auto sets = require_sets(j, "interfering");
    try {
        return indexcoding::make_instance(m, std::move(sets), family, p);
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

json constraints_to_json(const matroid::MatroidConstraints& c) {
    json bases = json::array();
    for (const auto& b : c.basis_sets) bases.push_back(b);
    json circuits = json::array();
    for (const auto& s : c.circuit_sets) circuits.push_back(s);
    return json{{"n", c.ground_size},
                {"rank", c.rank_value},
                {"bases", std::move(bases)},
                {"circuits", std::move(circuits)}};
}

matroid::MatroidConstraints constraints_from_json(const json& j) {
    int n = require_int(j, "n");
    int rank = require_int(j, "rank");
    auto bases = require_sets(j, "bases");
    auto circuits = require_sets(j, "circuits");
    try {
        return matroid::make_constraints(n, rank, std::move(bases),
                                         std::move(circuits));
    } catch (const Error& e) {
        throw ParseError(e.what());
    }
}

json decoding_report_to_json(const indexcoding::DecodingReport& rep) {
    json users = json::array();
    for (const auto& u : rep.users) {
        users.push_back(json{{"user", u.user},
                             {"rank_with", u.rank_with},
                             {"rank_without", u.rank_without},
                             {"ok", u.ok}});
    }
    return json{{"all_ok", rep.all_ok}, {"users", std::move(users)}};
}

json mais_to_json(const indexcoding::MaisResult& r) {
    return json{{"size", r.size}, {"witness", r.witness}};
}

json search_outcome_to_json(const search::SearchOutcome& o) {
    json j{{"verdict", o.found ? "witness" : "exhausted"},
           {"candidates", o.candidates},
           {"normalization", o.normalization},
           {"elapsed_ms", o.elapsed_ms}};
    j["matrix"] = o.witness ? matrix_to_json(*o.witness) : json(nullptr);
    return j;
}

json decision_to_json(const search::OptimalityDecision& d,
                      const std::string& family, int p, unsigned q) {
    json j{{"family", family},
           {"p", p},
           {"q", q},
           {"verdict", d.achievable ? "achievable" : "infeasible-t1"},
           {"note", d.note}};
    if (d.achievable) {
        j["rate"] = json::array({d.rate_rows, d.rate_t});
        j["mais"] = d.mais_bound;
        j["mais_exact"] = d.mais_exact;
        j["matrix"] = matrix_to_json(d.encoder->matrix);
        j["search"] = nullptr;
    } else {
        j["rate"] = nullptr;
        j["mais"] = nullptr;
        j["matrix"] = nullptr;
        j["search"] = search_outcome_to_json(*d.exhaustion);
    }
    return j;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw ParseError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const json& j) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write " + path);
    out << j.dump(2) << "\n";
}

}  // namespace pfano::io
