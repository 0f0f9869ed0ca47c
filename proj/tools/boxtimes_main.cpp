#include <cstdlib>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "boxtimes/io.hpp"
#include "boxtimes/linalg.hpp"

namespace bx = boxtimes;
using bx::io::json;

namespace {

struct Globals {
    bool as_json = false;
    std::optional<double> tol;       // set only by an explicit --tol
    std::size_t dim_cap = bx::kDefaultDimCap;
};

bx::Tolerance effective_tol(const Globals& g, double module_default) {
    return bx::Tolerance(g.tol.value_or(module_default));
}

std::string fmt_complex(const bx::Complex& z) {
    char buf[80];
    std::snprintf(buf, sizeof buf, "%.12g %c %.12gi", z.real(),
                  z.imag() < 0 ? '-' : '+', std::abs(z.imag()));
    return buf;
}

std::string fmt_res(double r) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.3e", r);
    return buf;
}

std::string fmt_full(double r) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", r);
    return buf;
}

void emit(const Globals& g, const json& report, const std::string& text) {
    if (g.as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << text;
}

// ---- gate info ------------------------------------------------------------

int cmd_gate_info(const Globals& g, const std::string& input,
                  std::optional<std::size_t> d, std::optional<std::size_t> k,
                  const std::vector<std::string>& expects) {
    const bx::Gate gate = bx::io::load_gate(input, d, k);
    const bx::Tolerance tol = effective_tol(g, bx::kDefaultTol);
    const bx::GateReport rep = bx::gate_report(gate, tol);

    json j = bx::io::gate_report_to_json(rep);
    j["name"] = gate.name.empty() ? json(nullptr) : json(gate.name);

    std::string text;
    text += "gate: " + (gate.name.empty() ? input : gate.name) + "  (d=" +
            std::to_string(rep.d) + ", k=" + std::to_string(rep.k) + ")\n";
    text += "unitarity residual: " + fmt_res(rep.unitarity_residual) +
            (rep.is_unitary ? "  (unitary)" : "  (NOT unitary)") + "\n";
    if (rep.ybe_residual) {
        text += "yang-baxter residual: " + fmt_res(*rep.ybe_residual) +
                (*rep.is_yang_baxter ? "  (yang-baxter gate)" : "  (NOT yang-baxter)") +
                "\n";
    } else {
        text += "yang-baxter residual: n/a (arity != 2)\n";
    }
    if (rep.entanglement_class) {
        text += std::string("entanglement class: ") +
                bx::to_string(*rep.entanglement_class) + "  (operator schmidt rank " +
                std::to_string(*rep.operator_schmidt_rank) + ")\n";
    } else if (rep.operator_schmidt_rank) {
        text += "entanglement class: n/a (gate is singular); operator schmidt rank " +
                std::to_string(*rep.operator_schmidt_rank) + "\n";
    } else {
        text += "entanglement class: n/a (arity != 2)\n";
    }
    emit(g, j, text);

    for (const std::string& e : expects) {
        bool ok = false;
        if (e == "unitary") ok = rep.is_unitary;
        else if (e == "yang-baxter") ok = rep.is_yang_baxter.value_or(false);
        else if (e == "entangling")
            ok = rep.entanglement_class == bx::GateClass::entangling;
        else if (e == "primitive-tensor")
            ok = rep.entanglement_class == bx::GateClass::primitive_tensor;
        else if (e == "primitive-swap")
            ok = rep.entanglement_class == bx::GateClass::primitive_swap;
        if (!ok) {
            std::cout << "expectation failed: " << e << "\n";
            return 1;
        }
    }
    return 0;
}

// ---- ts product / ts power -------------------------------------------------

bx::PartitionedMatrix load_partitioned(const std::string& spec, bx::CMatrix m,
                                       const std::string& which) {
    if (spec == "canonical") return bx::with_canonical_partition(std::move(m));
    bx::BlockPartition p =
        bx::io::partition_from_json(bx::io::read_json_file(spec), spec + " (" + which + ")");
    return bx::PartitionedMatrix(std::move(m), std::move(p));
}

int cmd_ts_product(const Globals& g, const std::string& a_ref, const std::string& b_ref,
                   const std::string& out, const std::string& part,
                   std::optional<std::string> part_a, std::optional<std::string> part_b) {
    bx::CMatrix a = bx::io::load_matrix(a_ref);
    bx::CMatrix b = bx::io::load_matrix(b_ref);
    if (a.rows * b.rows > g.dim_cap || a.cols * b.cols > g.dim_cap)
        throw std::runtime_error("ts product: result would be " +
                                 std::to_string(a.rows * b.rows) + "x" +
                                 std::to_string(a.cols * b.cols) +
                                 ", over the dimension cap " + std::to_string(g.dim_cap));
    bx::PartitionedMatrix pa = load_partitioned(part_a.value_or(part), std::move(a), a_ref);
    bx::PartitionedMatrix pb = load_partitioned(part_b.value_or(part), std::move(b), b_ref);
    const bx::CMatrix prod = bx::tracy_singh(pa, pb);
    bx::io::write_json_file(out, bx::io::matrix_to_json(prod));
    emit(g,
         json{{"rows", prod.rows}, {"cols", prod.cols}, {"output", out}},
         "wrote " + std::to_string(prod.rows) + "x" + std::to_string(prod.cols) +
             " product to " + out + "\n");
    return 0;
}

int cmd_ts_power(const Globals& g, const std::string& c_ref, std::size_t k,
                 const std::string& out) {
    const bx::CMatrix c = bx::io::load_matrix(c_ref);
    const bx::CMatrix p = bx::boxtimes_power(c, k, g.dim_cap);
    bx::io::write_json_file(out, bx::io::matrix_to_json(p));
    emit(g, json{{"rows", p.rows}, {"cols", p.cols}, {"output", out}},
         "wrote " + std::to_string(p.rows) + "x" + std::to_string(p.cols) +
             " power to " + out + "\n");
    return 0;
}

// ---- realize / simulate ----------------------------------------------------

std::string parent_dir(const std::string& path) {
    const auto pos = path.find_last_of('/');
    return pos == std::string::npos ? std::string() : path.substr(0, pos);
}

int cmd_realize(const Globals& g, const std::string& c_path,
                std::optional<std::string> cp_path, std::optional<std::size_t> iterate,
                const std::string& out) {
    const bx::Tolerance tol = effective_tol(g, bx::kDefaultTol);
    bx::Factorization fc = bx::io::factorization_from_json(
        bx::io::read_json_file(c_path), parent_dir(c_path), c_path);
    bx::Circuit circ;
    if (iterate) {
        if (cp_path)
            throw CLI::ValidationError(
                "realize", "--iterate squares --c; --cprime cannot be combined with it");
        circ = bx::iterate_realization(fc, *iterate, tol, g.dim_cap);
    } else {
        if (!cp_path)
            throw CLI::ValidationError("realize", "need --cprime (or --iterate k)");
        bx::Factorization fcp = bx::io::factorization_from_json(
            bx::io::read_json_file(*cp_path), parent_dir(*cp_path), *cp_path);
        circ = bx::realize_boxtimes(fc, fcp, tol);
    }
    bx::io::write_json_file(out, bx::io::circuit_to_json(circ));
    emit(g,
         json{{"width", circ.width},
              {"d", circ.d},
              {"placements", circ.gates.size()},
              {"output", out}},
         "wrote circuit on " + std::to_string(circ.width) + " wires (" +
             std::to_string(circ.gates.size()) + " placements) to " + out + "\n");
    return 0;
}

int cmd_simulate(const Globals& g, const std::string& in, const std::string& out) {
    const bx::Circuit circ =
        bx::io::circuit_from_json(bx::io::read_json_file(in), in);
    const bx::CMatrix m = bx::simulate(circ, g.dim_cap);
    bx::io::write_json_file(out, bx::io::matrix_to_json(m));
    emit(g, json{{"rows", m.rows}, {"cols", m.cols}, {"output", out}},
         "wrote " + std::to_string(m.rows) + "x" + std::to_string(m.cols) +
             " unitary to " + out + "\n");
    return 0;
}

// ---- braid / pair ----------------------------------------------------------

bx::EnhancedPair load_pair(const std::string& gate_ref, const std::string& mu_ref) {
    return bx::EnhancedPair(bx::io::load_gate(gate_ref), bx::io::load_matrix(mu_ref));
}

std::vector<bx::BraidWord> collect_words(std::optional<std::string> word,
                                         std::optional<std::size_t> max_len,
                                         std::size_t strands) {
    if (word.has_value() == max_len.has_value())
        throw CLI::ValidationError("braid", "give exactly one of --word / --max-len");
    std::vector<bx::BraidWord> words;
    if (word) {
        words.push_back(bx::parse_braid_word(*word, strands));
        return words;
    }
    const std::size_t limit = 20000;
    bx::enumerate_braid_words(strands, *max_len, [&](const bx::BraidWord& w) {
        words.push_back(w);
        return words.size() <= limit;
    });
    if (words.size() > limit)
        throw CLI::ValidationError("braid", "more than " + std::to_string(limit) +
                                                " words; lower --max-len");
    return words;
}

std::string rows_to_csv(const std::vector<bx::SwapFormRow>& rows) {
    std::string csv = "word,strands,lhs_re,lhs_im,rhs_re,rhs_im,abs_error\n";
    for (const auto& r : rows) {
        csv += bx::io::csv_escape(r.word) + "," + std::to_string(r.strands) + "," +
               fmt_full(r.lhs.real()) + "," + fmt_full(r.lhs.imag()) + "," +
               fmt_full(r.rhs.real()) + "," + fmt_full(r.rhs.imag()) + "," +
               fmt_full(r.abs_error) + "\n";
    }
    return csv;
}

json rows_to_json(const std::vector<bx::SwapFormRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back(json{{"word", r.word},
                           {"strands", r.strands},
                           {"lhs_re", r.lhs.real()},
                           {"lhs_im", r.lhs.imag()},
                           {"rhs_re", r.rhs.real()},
                           {"rhs_im", r.rhs.imag()},
                           {"abs_error", r.abs_error}});
    return arr;
}

int cmd_braid_invariant(const Globals& g, const std::string& gate_ref,
                        const std::string& mu_ref, std::size_t strands,
                        const std::string& word) {
    const bx::Tolerance tol = effective_tol(g, bx::kDefaultPairTol);
    const bx::EnhancedPair p = load_pair(gate_ref, mu_ref);
    const bx::BraidWord w = bx::parse_braid_word(word, strands);
    std::vector<std::string> warnings;
    const bx::Complex v = bx::turaev_invariant(p, w, tol, &warnings);
    const bx::PairReport rep = bx::check_enhanced_pair(p, tol);

    json j{{"invariant", {{"re", v.real()}, {"im", v.imag()}}},
           {"word", bx::braid_word_to_string(w)},
           {"strands", strands},
           {"pair", bx::io::pair_report_to_json(rep)},
           {"warnings", warnings}};
    std::string text = "invariant: " + fmt_complex(v) + "\n";
    text += "pair residuals: commutant " + fmt_res(rep.commutant) + ", trace+ " +
            fmt_res(rep.trace_plus) + ", trace- " + fmt_res(rep.trace_minus) +
            (rep.accepted ? "  (accepted)" : "  (VIOLATED)") + "\n";
    for (const auto& wmsg : warnings) text += "warning: " + wmsg + "\n";
    emit(g, j, text);
    return 0;
}

int cmd_braid_verify_product(const Globals& g, const std::string& gate_ref,
                             const std::string& mu_ref, const std::string& gate2_ref,
                             const std::string& mu2_ref, std::size_t strands,
                             std::optional<std::string> word,
                             std::optional<std::size_t> max_len,
                             std::optional<std::string> out) {
    const bx::Tolerance tol = effective_tol(g, bx::kDefaultPairTol);
    const bx::EnhancedPair p = load_pair(gate_ref, mu_ref);
    const bx::EnhancedPair q = load_pair(gate2_ref, mu2_ref);
    const std::vector<bx::BraidWord> words = collect_words(word, max_len, strands);

    std::vector<bx::SwapFormRow> rows;
    std::vector<std::string> warnings;
    double worst = 0.0;
    for (const bx::BraidWord& w : words) {
        std::vector<std::string>* sink = rows.empty() ? &warnings : nullptr;
        const bx::ProductCheck chk = bx::verify_product_formula(p, q, w, tol, sink);
        rows.push_back({bx::braid_word_to_string(w), strands, chk.lhs, chk.rhs,
                        chk.abs_error});
        worst = std::max(worst, chk.abs_error);
    }
    if (out) bx::io::atomic_write_text(*out, rows_to_csv(rows));

    const bool pass = worst <= tol.eps;
    json j{{"words", words.size()},
           {"max_abs_error", worst},
           {"pass", pass},
           {"warnings", warnings}};
    if (out) j["output"] = *out;
    else j["rows"] = rows_to_json(rows);
    std::string text;
    for (const auto& wmsg : warnings) text += "warning: " + wmsg + "\n";
    text += (pass ? "PASS" : "FAIL") + std::string(": ") +
            std::to_string(words.size()) + " word(s), max |lhs - rhs| = " +
            fmt_res(worst) + " (tol " + fmt_res(tol.eps) + ")\n";
    if (out) text += "wrote table to " + *out + "\n";
    emit(g, j, text);
    return pass ? 0 : 1;
}

int cmd_braid_explore_swap(const Globals& g, const std::string& gate_ref,
                           const std::string& mu_ref, const std::string& gate2_ref,
                           const std::string& mu2_ref, std::size_t strands,
                           std::optional<std::string> word,
                           std::optional<std::size_t> max_len,
                           std::optional<std::string> out) {
    const bx::Tolerance tol = effective_tol(g, bx::kDefaultPairTol);
    const bx::EnhancedPair p = load_pair(gate_ref, mu_ref);
    const bx::EnhancedPair q = load_pair(gate2_ref, mu2_ref);
    const std::vector<bx::BraidWord> words = collect_words(word, max_len, strands);
    const std::vector<bx::SwapFormRow> rows = bx::explore_swap_form(p, q, words, tol);
    double worst = 0.0;
    for (const auto& r : rows) worst = std::max(worst, r.abs_error);

    if (out) bx::io::atomic_write_text(*out, rows_to_csv(rows));
    json j{{"words", rows.size()}, {"max_abs_error", worst}};
    if (out) j["output"] = *out;
    else j["rows"] = rows_to_json(rows);
    std::string text = "explored " + std::to_string(rows.size()) +
                       " word(s), max |lhs - rhs| = " + fmt_res(worst) +
                       " (observational; nothing asserted)\n";
    if (out) text += "wrote table to " + *out + "\n";
    else if (!g.as_json) text += rows_to_csv(rows);
    emit(g, j, text);
    return 0;
}

int cmd_pair_check(const Globals& g, const std::string& gate_ref,
                   const std::string& mu_ref) {
    const bx::Tolerance tol = effective_tol(g, bx::kDefaultPairTol);
    const bx::EnhancedPair p = load_pair(gate_ref, mu_ref);
    const bx::PairReport rep = bx::check_enhanced_pair(p, tol);
    json j = bx::io::pair_report_to_json(rep);
    j["tol"] = tol.eps;
    std::string text =
        "commutant residual:   " + fmt_res(rep.commutant) + "\n" +
        "trace+ residual:      " + fmt_res(rep.trace_plus) + "\n" +
        "trace- residual:      " + fmt_res(rep.trace_minus) + "\n" +
        (rep.accepted ? "accepted" : "REJECTED") + " at tol " + fmt_res(tol.eps) + "\n";
    emit(g, j, text);
    return rep.accepted ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    Globals g;
    if (const char* env = std::getenv("BOXTIMES_DIM_CAP")) {
        try {
            std::size_t used = 0;
            g.dim_cap = std::stoul(env, &used);
            if (used != std::string(env).size() || g.dim_cap == 0)
                throw std::invalid_argument(env);
        } catch (const std::exception&) {
            std::cerr << "error: BOXTIMES_DIM_CAP='" << env
                      << "' is not a positive integer\n";
            return 2;
        }
    }

    CLI::App app{"Tracy-Singh gate constructions, circuit realizations, and "
                 "braid-closure invariants"};
    app.fallthrough();
    double tol_value = 0.0;
    auto* tol_opt = app.add_option("--tol", tol_value,
                                   "verification tolerance (default 1e-10; "
                                   "enhanced-pair commands default 1e-9)");
    app.add_flag("--json", g.as_json, "machine-readable reports on stdout");
    app.add_option("--dim-cap", g.dim_cap,
                   "max result dimension (default 10000; env BOXTIMES_DIM_CAP)");

    // gate info
    auto* gate_cmd = app.add_subcommand("gate", "inspect gates");
    auto* info = gate_cmd->add_subcommand("info", "report on one gate");
    std::string info_input;
    std::optional<std::size_t> info_d, info_k;
    std::vector<std::string> info_expect;
    info->add_option("input", info_input, "gate file or builtin:<name>")->required();
    info->add_option("--d", info_d, "local dimension override");
    info->add_option("--k", info_k, "arity override");
    info->add_option("--expect", info_expect,
                     "fail (exit 1) unless the report shows this property")
        ->check(CLI::IsMember({"unitary", "yang-baxter", "entangling",
                               "primitive-tensor", "primitive-swap"}));

    // ts product / power
    auto* ts_cmd = app.add_subcommand("ts", "Tracy-Singh products");
    auto* prod = ts_cmd->add_subcommand("product", "block Kronecker product");
    std::string prod_a, prod_b, prod_out, prod_part = "canonical";
    std::optional<std::string> prod_part_a, prod_part_b;
    prod->add_option("a", prod_a, "left matrix (file or builtin:<name>)")->required();
    prod->add_option("b", prod_b, "right matrix")->required();
    prod->add_option("-o,--output", prod_out, "output matrix file")->required();
    prod->add_option("--partition", prod_part,
                     "'canonical' or a partition file for both inputs");
    prod->add_option("--partition-a", prod_part_a, "partition file for a");
    prod->add_option("--partition-b", prod_part_b, "partition file for b");

    auto* power = ts_cmd->add_subcommand("power", "iterated square c, c(ts)c, ...");
    std::string power_c, power_out;
    std::size_t power_k = 1;
    power->add_option("c", power_c, "matrix (file or builtin:<name>)")->required();
    power->add_option("k", power_k, "number of levels (1 = the input itself)")
        ->required();
    power->add_option("-o,--output", power_out, "output matrix file")->required();

    // realize / simulate
    auto* realize = app.add_subcommand("realize", "emit a circuit for c (ts) c'");
    std::string rz_c, rz_out;
    std::optional<std::string> rz_cp;
    std::optional<std::size_t> rz_iterate;
    realize->add_option("--c", rz_c, "factorization file for c")->required();
    realize->add_option("--cprime", rz_cp, "factorization file for c'");
    realize->add_option("--iterate", rz_iterate,
                        "emit the k-fold iterated square of --c instead");
    realize->add_option("-o,--output", rz_out, "output circuit file")->required();

    auto* simulate = app.add_subcommand("simulate", "multiply out a circuit");
    std::string sim_in, sim_out;
    simulate->add_option("circuit", sim_in, "circuit file")->required();
    simulate->add_option("-o,--output", sim_out, "output matrix file")->required();

    // braid subcommands
    auto* braid = app.add_subcommand("braid", "braid representations and invariants");
    auto* inv = braid->add_subcommand("invariant", "Turaev trace of one braid word");
    std::string inv_gate, inv_mu, inv_word;
    std::size_t inv_strands = 0;
    inv->add_option("--gate", inv_gate, "2-qudit gate file or builtin:<name>")
        ->required();
    inv->add_option("--enhancer", inv_mu, "d x d enhancer matrix file")->required();
    inv->add_option("--strands", inv_strands, "strand count")->required();
    inv->add_option("--word", inv_word, "braid word, e.g. \"s1 s2^-1 s1\"")->required();

    auto* verify = braid->add_subcommand(
        "verify-product", "check multiplicativity of the invariant under (ts)");
    std::string vp_gate, vp_mu, vp_gate2, vp_mu2;
    std::size_t vp_strands = 0;
    std::optional<std::string> vp_word, vp_out;
    std::optional<std::size_t> vp_maxlen;
    verify->add_option("--gate", vp_gate, "first gate")->required();
    verify->add_option("--enhancer", vp_mu, "first enhancer")->required();
    verify->add_option("--gate2", vp_gate2, "second gate")->required();
    verify->add_option("--enhancer2", vp_mu2, "second enhancer")->required();
    verify->add_option("--strands", vp_strands, "strand count")->required();
    verify->add_option("--word", vp_word, "single braid word");
    verify->add_option("--max-len", vp_maxlen, "all words up to this length");
    verify->add_option("-o,--output", vp_out, "CSV table output");

    auto* explore = braid->add_subcommand(
        "explore-swap", "tabulate the same comparison for primitive-swap gates");
    std::string ex_gate, ex_mu, ex_gate2, ex_mu2;
    std::size_t ex_strands = 0;
    std::optional<std::string> ex_word, ex_out;
    std::optional<std::size_t> ex_maxlen;
    explore->add_option("--gate", ex_gate, "first gate")->required();
    explore->add_option("--enhancer", ex_mu, "first enhancer")->required();
    explore->add_option("--gate2", ex_gate2, "second gate")->required();
    explore->add_option("--enhancer2", ex_mu2, "second enhancer")->required();
    explore->add_option("--strands", ex_strands, "strand count")->required();
    explore->add_option("--word", ex_word, "single braid word");
    explore->add_option("--max-len", ex_maxlen, "all words up to this length");
    explore->add_option("-o,--output", ex_out, "CSV table output");

    // pair check
    auto* pair = app.add_subcommand("pair", "enhanced pairs");
    auto* pcheck = pair->add_subcommand("check", "test the enhancement conditions");
    std::string pc_gate, pc_mu;
    pcheck->add_option("--gate", pc_gate, "2-qudit gate file or builtin:<name>")
        ->required();
    pcheck->add_option("--enhancer", pc_mu, "d x d enhancer matrix file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    if (tol_opt->count() > 0) g.tol = tol_value;

    try {
        if (info->parsed()) return cmd_gate_info(g, info_input, info_d, info_k, info_expect);
        if (prod->parsed())
            return cmd_ts_product(g, prod_a, prod_b, prod_out, prod_part, prod_part_a,
                                  prod_part_b);
        if (power->parsed()) return cmd_ts_power(g, power_c, power_k, power_out);
        if (realize->parsed()) return cmd_realize(g, rz_c, rz_cp, rz_iterate, rz_out);
        if (simulate->parsed()) return cmd_simulate(g, sim_in, sim_out);
        if (inv->parsed())
            return cmd_braid_invariant(g, inv_gate, inv_mu, inv_strands, inv_word);
        if (verify->parsed())
            return cmd_braid_verify_product(g, vp_gate, vp_mu, vp_gate2, vp_mu2,
                                            vp_strands, vp_word, vp_maxlen, vp_out);
        if (explore->parsed())
            return cmd_braid_explore_swap(g, ex_gate, ex_mu, ex_gate2, ex_mu2,
                                          ex_strands, ex_word, ex_maxlen, ex_out);
        if (pcheck->parsed()) return cmd_pair_check(g, pc_gate, pc_mu);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    std::cout << app.help();
    return 2;
}
