// Command-line front end: ingest group/endomorphism definitions, dispatch to
// the engines, and emit table/JSON/CSV reports.
//
// Exit codes: 0 success, 1 verification failure, 2 input error.

#include <atomic>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "tbf/catalog.hpp"
#include "tbf/char_table.hpp"
#include "tbf/congruence.hpp"
#include "tbf/extension.hpp"
#include "tbf/io.hpp"

namespace {

using namespace tbf;
using nlohmann::json;

struct Options {
    std::string group_file;
    std::string endo_file;
    std::string matrix_literal;
    int sequence = 0;
    int congruence = 0;
    int tbft = 0;
    bool separate = false;
    bool certify = false;
    bool properties = false;
    std::string format = "table";
    int workers = static_cast<int>(std::thread::hardware_concurrency());
    std::string out_path;
};

std::ostream* open_output(const Options& opt, std::ofstream& file) {
    if (opt.out_path.empty()) return &std::cout;
    file.open(opt.out_path);
    if (!file) throw ParseError("cannot open output file " + opt.out_path);
    return &file;
}

ReidemeisterSequence finite_sequence(const FiniteGroup& g, const FiniteEndo& phi, int max_n) {
    ReidemeisterSequence seq;
    seq.source = "finite";
    for (int n = 1; n <= max_n; ++n)
        seq.values.push_back(RCount::of(reidemeister_number(g, phi, n)));
    return seq;
}

void emit_congruence(std::ostream& os, const std::string& format,
                     const ReidemeisterSequence& seq, bool& ok) {
    CongruenceReport rep = gauss_congruence_check(seq);
    if (!rep.all_pass) ok = false;
    if (format == "csv") {
        os << io::congruence_to_csv(seq, rep);
    } else if (format == "json") {
        json j;
        for (const auto& e : rep.per_n)
            j.push_back({{"n", e.n},
                         {"R", seq.at(e.n).to_string()},
                         {"S_n", e.sum.get_str()},
                         {"pass", e.pass}});
        os << j.dump(2) << "\n";
    } else {
        os << "n    R(phi^n)    S_n    S_n mod n    pass\n";
        for (const auto& e : rep.per_n)
            os << e.n << "    " << seq.at(e.n).to_string() << "    " << e.sum.get_str() << "    "
               << e.residue.get_str() << "    " << (e.pass ? "yes" : "NO") << "\n";
    }
}

void emit_sequence(std::ostream& os, const std::string& format, const ReidemeisterSequence& seq) {
    if (format == "json") {
        json j;
        for (int n = 1; n <= seq.length(); ++n)
            j.push_back({{"n", n}, {"R", seq.at(n).to_string()}});
        os << j.dump(2) << "\n";
    } else if (format == "csv") {
        os << "n,R\n";
        for (int n = 1; n <= seq.length(); ++n) os << n << "," << seq.at(n).to_string() << "\n";
    } else {
        os << "n    R(phi^n)\n";
        for (int n = 1; n <= seq.length(); ++n) os << n << "    " << seq.at(n).to_string() << "\n";
    }
}

int run_finite(const Options& opt) {
    std::ofstream file;
    std::ostream& os = *open_output(opt, file);
    FiniteGroup g = io::group_from_json(io::load_file(opt.group_file));
    FiniteEndo phi = io::endo_from_json(g, io::load_file(opt.endo_file));
    bool ok = true;

    if (opt.tbft > 0) {
        CharTable table = character_table(g);
        TbftReport rep = tbft_verify(g, phi, opt.tbft, &table);
        if (!rep.all_pass) ok = false;
        if (opt.format == "json") {
            json j;
            for (const auto& e : rep.entries)
                j.push_back({{"n", e.power},
                             {"R", e.reidemeister},
                             {"f_points", e.f_points},
                             {"pass", e.pass}});
            os << j.dump(2) << "\n";
        } else {
            os << "n    R    f-points    pass\n";
            for (const auto& e : rep.entries)
                os << e.power << "    " << e.reidemeister << "    " << e.f_points << "    "
                   << (e.pass ? "yes" : "NO") << "\n";
        }
    }
    if (opt.sequence > 0) emit_sequence(os, opt.format, finite_sequence(g, phi, opt.sequence));
    if (opt.congruence > 0)
        emit_congruence(os, opt.format, finite_sequence(g, phi, opt.congruence), ok);
    if (opt.properties) {
        bool kernel_ok = kernel_coset_property(g, phi).pass;
        bool invariance_ok = class_invariance_property(g, phi);
        bool image_ok = finite_image_finiteness_property(g, phi);
        bool shifts_ok = true;
        for (int s = 0; s < g.order() && shifts_ok; ++s)
            shifts_ok = shift_bijection_property(g, phi, s).pass;
        os << "kernel-cosets: " << (kernel_ok ? "pass" : "FAIL") << "\n"
           << "class-invariance: " << (invariance_ok ? "pass" : "FAIL") << "\n"
           << "kernel-quotient-bijection: " << (image_ok ? "pass" : "FAIL") << "\n"
           << "shift-bijection: " << (shifts_ok ? "pass" : "FAIL") << "\n";
        if (!(kernel_ok && invariance_ok && image_ok && shifts_ok)) ok = false;
    }
    if (opt.tbft == 0 && opt.sequence == 0 && opt.congruence == 0 && !opt.properties) {
        ReidemeisterReport rep = reidemeister_report(g, phi, 1);
        if (opt.format == "json") os << io::partition_to_json(rep.partition, 1).dump(2) << "\n";
        else os << "R(phi) = " << rep.number << "\n";
    }
    return ok ? 0 : 1;
}

int run_abelian(const Options& opt) {
    std::ofstream file;
    std::ostream& os = *open_output(opt, file);
    json def = opt.matrix_literal.empty() ? io::load_file(opt.group_file)
                                          : json::parse(opt.matrix_literal, nullptr, true);
    bool ok = true;
    if (def.is_object() && def.contains("rank")) {
        FgAbelianEndo phi = io::fg_abelian_from_json(def);
        auto seq_for = [&](int max_n) {
            ReidemeisterSequence seq;
            seq.source = "abelian";
            for (int n = 1; n <= max_n; ++n) seq.values.push_back(reidemeister_number_fg_abelian(phi, n));
            return seq;
        };
        if (opt.sequence > 0) emit_sequence(os, opt.format, seq_for(opt.sequence));
        if (opt.congruence > 0) emit_congruence(os, opt.format, seq_for(opt.congruence), ok);
        if (opt.sequence == 0 && opt.congruence == 0)
            os << "R(phi) = " << reidemeister_number_fg_abelian(phi).to_string() << "\n";
        return ok ? 0 : 1;
    }
    IntMatrix m = io::matrix_from_json(def);
    auto seq_for = [&](int max_n) {
        ReidemeisterSequence seq;
        seq.source = "abelian";
        for (int n = 1; n <= max_n; ++n) seq.values.push_back(reidemeister_number_zn(m, n));
        return seq;
    };
    if (opt.sequence > 0) emit_sequence(os, opt.format, seq_for(opt.sequence));
    if (opt.congruence > 0) emit_congruence(os, opt.format, seq_for(opt.congruence), ok);
    if (opt.separate) {
        AbelianSeparatingQuotient q = abelian_separating_quotient(m);
        json j;
        j["R"] = q.order.get_str();
        json basis = json::array();
        for (int i = 0; i < q.sublattice.basis().rows(); ++i) {
            json row = json::array();
            for (int c = 0; c < q.sublattice.basis().cols(); ++c)
                row.push_back(q.sublattice.basis()(i, c).get_str());
            basis.push_back(row);
        }
        j["lattice_basis"] = basis;
        json factors = json::array();
        for (const auto& f : q.factors) factors.push_back(f.get_str());
        j["invariant_factors"] = factors;
        os << j.dump(2) << "\n";
    }
    if (opt.sequence == 0 && opt.congruence == 0 && !opt.separate)
        os << "R(phi) = " << reidemeister_number_zn(m).to_string() << "\n";
    return ok ? 0 : 1;
}

int run_extension(const Options& opt) {
    std::ofstream file;
    std::ostream& os = *open_output(opt, file);
    io::ExtensionJob job = io::extension_from_json(io::load_file(opt.group_file));
    const ExtensionEndo& phi = *job.endo;
    bool ok = true;
    auto seq_for = [&](int max_n) {
        ReidemeisterSequence seq;
        seq.source = "extension";
        for (int n = 1; n <= max_n; ++n)
            seq.values.push_back(reidemeister_number_extension(phi.iterate(n)));
        return seq;
    };
    if (opt.sequence > 0) emit_sequence(os, opt.format, seq_for(opt.sequence));
    if (opt.congruence > 0) emit_congruence(os, opt.format, seq_for(opt.congruence), ok);
    if (opt.separate) {
        SeparatingQuotient q = build_separating_quotient(phi);
        json j;
        json basis = json::array();
        for (int i = 0; i < q.lattice().basis().rows(); ++i) {
            json row = json::array();
            for (int c = 0; c < q.lattice().basis().cols(); ++c)
                row.push_back(q.lattice().basis()(i, c).get_str());
            basis.push_back(row);
        }
        j["lattice_basis"] = basis;
        j["quotient_order"] = q.quotient().order();
        os << j.dump(2) << "\n";
    }
    if (opt.certify) {
        TbftFfCertificate cert = tbft_ff_certify(phi);
        os << io::certificate_to_json(cert).dump(2) << "\n";
        if (!cert.certified) ok = false;
    }
    if (opt.tbft > 0) {
        SeparatingQuotient q = build_separating_quotient(phi);
        CharTable table = character_table(q.quotient());
        TbftReport rep = tbft_verify(q.quotient(), q.endo(), opt.tbft, &table);
        if (!rep.all_pass) ok = false;
        os << "n    R    f-points    pass\n";
        for (const auto& e : rep.entries)
            os << e.power << "    " << e.reidemeister << "    " << e.f_points << "    "
               << (e.pass ? "yes" : "NO") << "\n";
    }
    if (opt.sequence == 0 && opt.congruence == 0 && !opt.separate && !opt.certify && opt.tbft == 0)
        os << "R(phi) = " << reidemeister_number_extension(phi).to_string() << "\n";
    return ok ? 0 : 1;
}

// Corpus verification: every enumerated endomorphism of every catalog group,
// TBFT + oracle equivalence + congruences. Jobs run on a small worker pool;
// per-job output is buffered and emitted in deterministic order.
int run_corpus(const std::string& suite, const Options& opt) {
    std::ofstream file;
    std::ostream& os = *open_output(opt, file);
    const bool full = suite == "full";
    auto groups = catalog::corpus();
    if (!full) {
        // smoke: the small fast subset
        std::vector<catalog::NamedGroup> small;
        for (auto& ng : groups)
            if (ng.group.order() <= 6) small.push_back(std::move(ng));
        groups = std::move(small);
    }
    const int tbft_powers = full ? 4 : 2;
    const int congruence_powers = full ? 6 : 3;

    struct Job {
        const catalog::NamedGroup* group;
        const FiniteEndo* endo;
        int endo_index;
    };
    std::vector<std::vector<FiniteEndo>> all_endos;
    std::vector<CharTable> tables;
    for (auto& ng : groups) {
        all_endos.push_back(enumerate_endomorphisms(ng.group));
        tables.push_back(character_table(ng.group));
    }
    std::vector<Job> jobs;
    for (std::size_t gi = 0; gi < groups.size(); ++gi)
        for (std::size_t ei = 0; ei < all_endos[gi].size(); ++ei)
            jobs.push_back({&groups[gi], &all_endos[gi][ei], static_cast<int>(ei)});

    std::vector<std::string> outputs(jobs.size());
    std::atomic<std::size_t> next{0};
    std::atomic<int> failures{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= jobs.size()) return;
            const Job& job = jobs[i];
            std::ostringstream buf;
            const FiniteGroup& g = job.group->group;
            std::size_t gi = 0;
            while (&groups[gi] != job.group) ++gi;
            bool ok = true;
            TbftReport rep = tbft_verify(g, *job.endo, tbft_powers, &tables[gi]);
            if (!rep.all_pass) ok = false;
            for (int n = 1; n <= congruence_powers && ok; ++n)
                if (reidemeister_number(g, *job.endo, n) != burnside_average(g, job.endo->iterate(n)))
                    ok = false;
            ReidemeisterSequence seq = finite_sequence(g, *job.endo, congruence_powers);
            if (!gauss_congruence_check(seq).all_pass) ok = false;
            buf << job.group->name << " endo#" << job.endo_index << ": "
                << (ok ? "pass" : "FAIL") << " (R=" << rep.entries.front().reidemeister << ")";
            if (!ok) failures.fetch_add(1);
            outputs[i] = buf.str();
        }
    };
    const int nworkers = std::max(1, opt.workers);
    std::vector<std::thread> pool;
    for (int w = 0; w < nworkers; ++w) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    for (const auto& line : outputs) os << line << "\n";
    os << jobs.size() << " jobs, " << failures.load() << " failures\n";
    if (jobs.empty()) std::cerr << "warning: empty corpus\n";
    return failures.load() == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Twisted conjugacy toolkit: Reidemeister numbers, TBFT checks, Gauss congruences"};
    app.require_subcommand(1);

    Options opt;
    std::string suite = "smoke";

    auto add_common = [&](CLI::App* sub, bool with_group_endo) {
        if (with_group_endo) {
            sub->add_option("--group", opt.group_file, "group/extension definition JSON file");
            sub->add_option("--endo", opt.endo_file, "endomorphism definition JSON file");
        }
        sub->add_option("--sequence", opt.sequence, "emit R(phi^n) for n = 1..N");
        sub->add_option("--congruence", opt.congruence, "check Gauss congruences up to N");
        sub->add_option("--format", opt.format, "table|json|csv")
            ->check(CLI::IsMember({"table", "json", "csv"}));
        sub->add_option("--out", opt.out_path, "write the report to a file");
        sub->add_option("--workers", opt.workers, "worker thread count");
    };

    CLI::App* finite = app.add_subcommand("finite", "finite group jobs");
    add_common(finite, true);
    finite->add_option("--tbft", opt.tbft, "verify TBFT for powers 1..N");
    finite->add_flag("--properties", opt.properties, "run the lemma property suite");

    CLI::App* abelian = app.add_subcommand("abelian", "Z^n and f.g. abelian jobs");
    add_common(abelian, false);
    abelian->add_option("--group", opt.group_file, "f.g. abelian definition JSON file");
    abelian->add_option("--matrix", opt.matrix_literal, "inline integer matrix literal [[...]]");
    abelian->add_flag("--separate", opt.separate, "emit the separating quotient");

    CLI::App* extension = app.add_subcommand("extension", "lattice-by-finite extension jobs");
    add_common(extension, true);
    extension->add_flag("--separate", opt.separate, "emit the separating quotient");
    extension->add_flag("--certify", opt.certify, "emit a TBFT_ff certificate");
    extension->add_option("--tbft", opt.tbft, "verify TBFT on the quotient for powers 1..N");

    CLI::App* corpus = app.add_subcommand("corpus", "run the bundled verification corpus");
    corpus->add_option("--suite", suite, "smoke|full")->check(CLI::IsMember({"smoke", "full"}));
    corpus->add_option("--format", opt.format, "table|json|csv");
    corpus->add_option("--out", opt.out_path, "write the report to a file");
    corpus->add_option("--workers", opt.workers, "worker thread count");

    CLI11_PARSE(app, argc, argv);

    try {
        if (finite->parsed()) return run_finite(opt);
        if (abelian->parsed()) return run_abelian(opt);
        if (extension->parsed()) return run_extension(opt);
        if (corpus->parsed()) return run_corpus(suite, opt);
    } catch (const tbf::ParseError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const tbf::ValidationError& e) {
        std::cerr << "validation error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
