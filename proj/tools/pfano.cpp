// pfano: build, verify, and decide index-coding and matroid instances
// whose feasibility depends on the field characteristic.
//
// Exit codes: 0 success/verified, 1 verification failed, 2 input error,
// 3 budget exceeded.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pfano/json_io.hpp"
#include "pfano/search.hpp"

namespace {

using namespace pfano;
using indexcoding::Family;
using io::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitInputError = 2;
constexpr int kExitBudget = 3;

Family parse_family(const std::string& name) {
    if (name == "p-fano") return Family::PFano;
    if (name == "p-nonfano") return Family::PNonFano;
    throw ParseError("unknown family \"" + name + "\"");
}

void emit(const json& j, const std::string& out_path) {
    if (!out_path.empty()) io::write_json_file(out_path, j);
}

// prints the matrix with vertical separators after the named blocks,
// mirroring the block layout of the canonical encoders
void print_matrix_table(const matrix::BlockMatrix& m,
                        const std::vector<int>& breaks_after = {}) {
    auto has_break = [&](int b) {
        return std::find(breaks_after.begin(), breaks_after.end(), b) !=
               breaks_after.end();
    };
    std::printf("     ");
    for (int b = 1; b <= m.num_blocks(); ++b) {
        for (int off = 0; off < m.block_width(); ++off) {
            std::printf("%3d", b);
        }
        if (b < m.num_blocks() && has_break(b)) std::printf(" |");
    }
    std::printf("\n");
    for (int r = 0; r < m.rows(); ++r) {
        std::printf("%4d ", r + 1);
        for (int b = 1; b <= m.num_blocks(); ++b) {
            for (int off = 0; off < m.block_width(); ++off) {
                std::printf("%3u", m.block_at(r, b, off));
            }
            if (b < m.num_blocks() && has_break(b)) std::printf(" |");
        }
        std::printf("\n");
    }
}

// segment boundaries of the m-block encoder: ground identity, the
// complement-sum range, column n, the p+1 identity groups, the shifted
// identity group, and the tail groups
std::vector<int> encoder_breaks(int p) {
    std::vector<int> breaks{p + 1, 2 * p + 2, 2 * p + 3};
    int at = 2 * p + 3;
    for (int l = 1; l <= p + 1; ++l) breaks.push_back(at += p + 1);
    breaks.push_back(at += p + 1);
    if (p > 2) {
        for (int l = 1; l <= p + 1; ++l) breaks.push_back(at += p - 2);
    }
    return breaks;
}

std::vector<int> ground_breaks(int p) {
    return {p + 1, 2 * p + 2, 2 * p + 3};
}

int cmd_gen(const std::string& family_name, int p, const std::string& out) {
    Family family = parse_family(family_name);
    indexcoding::IndexCodingInstance inst =
        (family == Family::PFano) ? indexcoding::build_p_fano_instance(p)
                                  : indexcoding::build_p_nonfano_instance(p);
    emit(io::instance_to_json(inst), out);
    std::printf("%s instance, p=%d, m=%d users", family_name.c_str(), p,
                inst.m);
    if (!out.empty()) std::printf(" -> %s", out.c_str());
    std::printf("\n");
    return kExitOk;
}

int cmd_encoder(int p, unsigned q, const std::string& out) {
    gf::PrimeField field(q);
    indexcoding::Encoder enc = indexcoding::canonical_encoder(p, field);
    emit(io::matrix_to_json(enc.matrix), out);
    std::printf("encoder for p=%d over GF(%u): %d x %d, rate %d/%d\n", p, q,
                enc.matrix.rows(), enc.matrix.cols(), enc.rate_rows(),
                enc.rate_t());
    print_matrix_table(enc.matrix, encoder_breaks(p));
    return kExitOk;
}

int cmd_verify(const std::string& instance_path,
               const std::string& matrix_path, bool with_mais,
               std::optional<int> expect_t, const std::string& out) {
    indexcoding::IndexCodingInstance inst =
        io::instance_from_json(io::load_json_file(instance_path));
    matrix::BlockMatrix m = io::matrix_from_json(io::load_json_file(matrix_path));
    if (expect_t && m.block_width() != *expect_t) {
        throw ParseError("matrix has t=" + std::to_string(m.block_width()) +
                         ", expected t=" + std::to_string(*expect_t));
    }
    indexcoding::Encoder enc{std::move(m)};
    indexcoding::DecodingReport rep = indexcoding::check_decoding(enc, inst);

    json j = io::decoding_report_to_json(rep);
    j["m"] = inst.m;
    j["rate"] = json::array({enc.rate_rows(), enc.rate_t()});
    if (with_mais) {
        indexcoding::MaisResult mr = indexcoding::mais(inst);
        j["mais"] = io::mais_to_json(mr);
        j["optimal"] =
            rep.all_ok && enc.rate_rows() == mr.size * enc.rate_t();
    }
    emit(j, out);

    int failed = 0;
    for (const auto& u : rep.users) {
        if (!u.ok) {
            ++failed;
            std::printf("user %3d: rank with %d, without %d  FAIL\n", u.user,
                        u.rank_with, u.rank_without);
        }
    }
    std::printf("%d/%d users decode; rate %d/%d", inst.m - failed, inst.m,
                enc.rate_rows(), enc.rate_t());
    if (with_mais) std::printf("; MAIS bound %d", j["mais"]["size"].get<int>());
    std::printf("\n");
    return rep.all_ok ? kExitOk : kExitVerifyFailed;
}

int cmd_mais(const std::string& instance_path, const std::string& out) {
    indexcoding::IndexCodingInstance inst =
        io::instance_from_json(io::load_json_file(instance_path));
    indexcoding::MaisResult r = indexcoding::mais(inst);
    emit(io::mais_to_json(r), out);
    std::printf("MAIS size %d, witness:", r.size);
    for (int v : r.witness) std::printf(" %d", v);
    std::printf("\n");
    return kExitOk;
}

int cmd_search(const std::string& family_name, int p, unsigned q,
               const std::string& constraints_path, std::uint64_t budget,
               int workers, const std::string& out) {
    gf::PrimeField field(q);
    matroid::MatroidConstraints c;
    if (!constraints_path.empty()) {
        c = io::constraints_from_json(io::load_json_file(constraints_path));
    } else {
        Family family = parse_family(family_name);
        c = (family == Family::PFano) ? matroid::p_fano_constraints(p)
                                      : matroid::p_nonfano_constraints(p);
    }
    search::SearchOutcome o =
        search::search_scalar_representation(c, field, budget, workers);
    emit(io::search_outcome_to_json(o), out);
    std::printf("%s after %llu candidates (%lld ms)\n",
                o.found ? "witness" : "exhausted",
                static_cast<unsigned long long>(o.candidates),
                static_cast<long long>(o.elapsed_ms));
    if (o.witness) {
        print_matrix_table(*o.witness,
                           ground_breaks((o.witness->num_blocks() - 3) / 2));
    }
    return kExitOk;
}

int cmd_decide(const std::string& family_name, int p, unsigned q,
               std::uint64_t budget, int workers, const std::string& out) {
    gf::PrimeField field(q);
    Family family = parse_family(family_name);
    search::OptimalityDecision d =
        search::decide_family_optimality(family, p, field, budget, workers);
    emit(io::decision_to_json(d, family_name, p, q), out);
    if (d.achievable) {
        std::printf("achievable: rate %d/%d equals the MAIS bound %d\n",
                    d.rate_rows, d.rate_t, d.mais_bound);
    } else {
        std::printf("infeasible at t=1: search exhausted %llu candidates\n",
                    static_cast<unsigned long long>(
                        d.exhaustion->candidates));
    }
    std::printf("%s\n", d.note.c_str());
    return kExitOk;
}

int cmd_simulate(const std::string& instance_path,
                 const std::string& matrix_path, std::uint64_t seed,
                 const std::string& out) {
    indexcoding::IndexCodingInstance inst =
        io::instance_from_json(io::load_json_file(instance_path));
    indexcoding::Encoder enc{
        io::matrix_from_json(io::load_json_file(matrix_path))};
    const gf::PrimeField& field = enc.matrix.field();
    std::vector<std::uint32_t> x = indexcoding::random_messages(
        field, inst.m, enc.matrix.block_width(), seed);
    std::vector<std::uint32_t> decoded =
        indexcoding::simulate_round(enc, inst, x);
    std::vector<std::uint32_t> y = matrix::apply(enc.matrix, x);
    bool exact = (decoded == x);

    json j{{"q", field.modulus()},
           {"t", enc.matrix.block_width()},
           {"m", inst.m},
           {"seed", seed},
           {"messages", x},
           {"coded", y},
           {"decoded", decoded},
           {"exact", exact}};
    emit(j, out);
    std::printf("%d coded symbols broadcast; %s\n", enc.matrix.rows(),
                exact ? "all users recovered their message exactly"
                      : "recovery mismatch");
    return exact ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"characteristic-dependent index codes and matroid "
                 "representations over prime fields"};
    app.require_subcommand(1);

    std::string family = "p-fano";
    int p = 2;
    unsigned q = 2;
    std::string in_instance, in_matrix, in_constraints, out;
    std::uint64_t seed = 0;
    std::uint64_t budget = search::kDefaultBudget;
    int workers = 1;
    bool with_mais = false;
    std::optional<int> expect_t;

    auto* gen = app.add_subcommand("gen", "write an instance JSON file");
    gen->add_option("--family", family, "p-fano or p-nonfano");
    gen->add_option("-p", p, "family parameter (prime)")->required();
    gen->add_option("-o,--out", out, "output path")->required();

    auto* encoder =
        app.add_subcommand("encoder", "write the canonical encoder matrix");
    encoder->add_option("-p", p, "family parameter (prime)")->required();
    encoder->add_option("-q", q, "field size (prime)")->required();
    encoder->add_option("-o,--out", out, "output path")->required();

    auto* verify = app.add_subcommand(
        "verify", "check the per-user decoding condition of a matrix");
    verify->add_option("instance", in_instance, "instance JSON")->required();
    verify->add_option("matrix", in_matrix, "matrix JSON")->required();
    verify->add_flag("--mais", with_mais, "also report the MAIS bound");
    int expect_t_val = 0;
    auto* topt = verify->add_option("-t", expect_t_val,
                                    "require this block width");
    verify->add_option("-o,--out", out, "report JSON path");

    auto* mais_cmd =
        app.add_subcommand("mais", "exact maximum acyclic induced subset");
    mais_cmd->add_option("instance", in_instance, "instance JSON")->required();
    mais_cmd->add_option("-o,--out", out, "output path");
    mais_cmd->add_option("--workers", workers,
                         "accepted for flag compatibility; the exact solver "
                         "is single-threaded");

    auto* search_cmd = app.add_subcommand(
        "search", "decide scalar representability by normalized search");
    search_cmd->add_option("--family", family, "p-fano or p-nonfano");
    search_cmd->add_option("-p", p, "family parameter (prime)");
    search_cmd->add_option("-q", q, "field size (prime)")->required();
    search_cmd->add_option("--constraints", in_constraints,
                           "constraints JSON instead of a named family");
    search_cmd->add_option("--budget", budget, "node budget");
    search_cmd->add_option("--workers", workers, "parallel workers");
    search_cmd->add_option("-o,--out", out, "report JSON path");

    auto* decide = app.add_subcommand(
        "decide", "decide rate-(p+1) optimality of linear coding at t=1");
    decide->add_option("--family", family, "p-fano or p-nonfano");
    decide->add_option("-p", p, "family parameter (prime)")->required();
    decide->add_option("-q", q, "field size (prime)")->required();
    decide->add_option("--budget", budget, "node budget");
    decide->add_option("--workers", workers, "parallel workers");
    decide->add_option("-o,--out", out, "verdict JSON path");

    auto* simulate = app.add_subcommand(
        "simulate", "one seeded encode/decode round over an instance");
    simulate->add_option("instance", in_instance, "instance JSON")->required();
    simulate->add_option("matrix", in_matrix, "matrix JSON")->required();
    simulate->add_option("--seed", seed, "message RNG seed");
    simulate->add_option("-o,--out", out, "transcript JSON path");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitInputError;
    }

    try {
        if (gen->parsed()) return cmd_gen(family, p, out);
        if (encoder->parsed()) return cmd_encoder(p, q, out);
        if (verify->parsed()) {
            if (topt->count() > 0) expect_t = expect_t_val;
            return cmd_verify(in_instance, in_matrix, with_mais, expect_t,
                              out);
        }
        if (mais_cmd->parsed()) return cmd_mais(in_instance, out);
        if (search_cmd->parsed()) {
            return cmd_search(family, p, q, in_constraints, budget, workers,
                              out);
        }
        if (decide->parsed()) {
            return cmd_decide(family, p, q, budget, workers, out);
        }
        if (simulate->parsed()) {
            return cmd_simulate(in_instance, in_matrix, seed, out);
        }
    } catch (const BudgetExceededError& e) {
        std::cerr << "budget exceeded: " << e.what() << "\n";
        return kExitBudget;
    } catch (const NotDecodableError& e) {
        std::cerr << "not decodable: " << e.what() << "\n";
        return kExitVerifyFailed;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}
