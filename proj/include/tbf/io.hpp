#pragma once

#include <fstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "tbf/abelian.hpp"
#include "tbf/char_table.hpp"
#include "tbf/congruence.hpp"
#include "tbf/extension.hpp"
#include "tbf/twisted.hpp"

namespace tbf::io {

using nlohmann::json;

inline json load_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return j;
}

// { "kind": "cayley", "table": [[...]], "identity": 0, "labels": [...] }
// { "kind": "permutation", "generators": [[...]], "labels": [...] }
inline FiniteGroup group_from_json(const json& j) {
    try {
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        const std::string kind = j.at("kind").get<std::string>();
        if (kind == "cayley") {
            auto table = j.at("table").get<std::vector<std::vector<int>>>();
            int identity = j.value("identity", 0);
            return FiniteGroup::from_cayley(std::move(table), identity, std::move(labels));
        }
        if (kind == "permutation") {
            auto gens = j.at("generators").get<std::vector<std::vector<int>>>();
            return FiniteGroup::from_permutations(gens, std::move(labels));
        }
        throw ParseError("unknown group kind: " + kind);
    } catch (const json::exception& e) {
        throw ParseError(std::string("group definition: ") + e.what());
    }
}

inline json group_to_json(const FiniteGroup& g) {
    json j;
    j["kind"] = "cayley";
    j["identity"] = 0;
    j["table"] = g.table();
    if (!g.labels().empty()) j["labels"] = g.labels();
    return j;
}

// { "map": [...] } or { "generator_images": { "<element>": image, ... } }
inline FiniteEndo endo_from_json(const FiniteGroup& g, const json& j) {
    try {
        if (j.contains("map")) return FiniteEndo(g, j.at("map").get<std::vector<int>>());
        if (j.contains("generator_images")) {
            std::vector<int> gens;
            std::vector<int> images;
            for (const auto& [key, value] : j.at("generator_images").items()) {
                gens.push_back(std::stoi(key));
                images.push_back(value.get<int>());
            }
            if (!g.generates(gens)) throw NotGenerating();
            // extend along BFS words from the generators
            std::vector<int> map(g.order(), -1);
            map[0] = 0;
            std::vector<int> frontier{0};
            while (!frontier.empty()) {
                std::vector<int> fresh;
                for (int x : frontier)
                    for (std::size_t i = 0; i < gens.size(); ++i) {
                        int y = g.mul(x, gens[i]);
                        if (map[y] < 0) {
                            map[y] = g.mul(map[x], images[i]);
                            fresh.push_back(y);
                        }
                    }
                frontier = std::move(fresh);
            }
            return FiniteEndo(g, std::move(map));  // homomorphism check included
        }
        throw ParseError("endomorphism file needs \"map\" or \"generator_images\"");
    } catch (const json::exception& e) {
        throw ParseError(std::string("endomorphism definition: ") + e.what());
    }
}

// { "n": int, "entries": [[...]] } or a bare [[...]] literal
inline IntMatrix matrix_from_json(const json& j) {
    try {
        const json& entries = j.is_array() ? j : j.at("entries");
        auto rows = entries.get<std::vector<std::vector<long>>>();
        IntMatrix m = IntMatrix::from_rows(rows);
        if (!j.is_array() && j.contains("n") && j.at("n").get<int>() != m.rows())
            throw ParseError("matrix size field disagrees with the entries");
        if (m.rows() != m.cols()) throw ParseError("endomorphism matrix must be square");
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("matrix definition: ") + e.what());
    }
}

// { "rank": r, "torsion": [d1,...], "matrix": [[...]] }
inline FgAbelianEndo fg_abelian_from_json(const json& j) {
    try {
        FgAbelian g(j.at("rank").get<int>(), [&] {
            std::vector<mpz_class> t;
            for (long d : j.value("torsion", std::vector<long>{})) t.push_back(d);
            return t;
        }());
        return FgAbelianEndo(std::move(g), matrix_from_json(j.at("matrix")));
    } catch (const json::exception& e) {
        throw ParseError(std::string("abelian definition: ") + e.what());
    }
}

// { "n": int, "F": <group def>, "theta": { "<f>": [[...]] },
//   "endo": { "M": [[...]], "psi": [...], "c": { "<f>": [...] } } }
// The endomorphism references the extension by pointer, so the extension
// lives on the heap with the job.
struct ExtensionJob {
    std::shared_ptr<const LatticeExtension> ext;
    std::optional<ExtensionEndo> endo;
};

inline ExtensionJob extension_from_json(const json& j) {
    try {
        const int n = j.at("n").get<int>();
        FiniteGroup f = group_from_json(j.at("F"));
        std::vector<IntMatrix> theta(f.order(), IntMatrix::identity(n));
        for (const auto& [key, value] : j.at("theta").items())
            theta[std::stoul(key)] = matrix_from_json(value);
        ExtensionJob job;
        job.ext = std::make_shared<const LatticeExtension>(n, std::move(f), std::move(theta));
        const json& ej = j.at("endo");
        IntMatrix m = matrix_from_json(ej.at("M"));
        FiniteEndo psi(job.ext->finite_part, ej.at("psi").get<std::vector<int>>());
        std::vector<std::vector<mpz_class>> c(job.ext->finite_part.order(),
                                              std::vector<mpz_class>(n, 0));
        if (ej.contains("c"))
            for (const auto& [key, value] : ej.at("c").items()) {
                auto vec = value.get<std::vector<long>>();
                if (vec.size() != static_cast<std::size_t>(n))
                    throw ParseError("cocycle vector length mismatch");
                for (int i = 0; i < n; ++i) c[std::stoul(key)][i] = vec[i];
            }
        job.endo.emplace(*job.ext, std::move(m), std::move(psi), std::move(c));
        return job;
    } catch (const json::exception& e) {
        throw ParseError(std::string("extension definition: ") + e.what());
    }
}

inline json partition_to_json(const ClassPartition& p, int power) {
    json j;
    j["R"] = p.count();
    j["power"] = power;
    j["classes"] = p.classes;
    j["reps"] = p.reps;
    return j;
}

inline json char_table_to_json(const CharTable& t) {
    json j;
    j["cyclotomic_order"] = t.field->order;
    j["classes"] = t.classes.classes;
    j["class_sizes"] = t.class_sizes;
    j["degrees"] = t.degrees;
    json rows = json::array();
    for (const auto& row : t.values) {
        json r = json::array();
        for (const Cyc& v : row) {
            json coords = json::array();
            for (const mpq_class& c : v.coords()) {
                if (c.get_den() != 1)
                    throw ValidationError("character coordinate is not an integer");
                coords.push_back(c.get_num().get_str());
            }
            r.push_back(coords);
        }
        rows.push_back(r);
    }
    j["values"] = rows;
    return j;
}

inline json certificate_to_json(const TbftFfCertificate& cert) {
    json j;
    json basis = json::array();
    const IntMatrix& b = cert.quotient.lattice().basis();
    for (int i = 0; i < b.rows(); ++i) {
        json row = json::array();
        for (int c = 0; c < b.cols(); ++c) row.push_back(b(i, c).get_str());
        basis.push_back(row);
    }
    j["lattice_basis"] = basis;
    j["quotient_order"] = cert.quotient.quotient().order();
    j["R"] = cert.reidemeister;
    j["fixed_characters"] = cert.fixed_characters;
    j["stabilization_pass"] = cert.stabilization_pass;
    j["certified"] = cert.certified;
    return j;
}

inline std::string congruence_to_csv(const ReidemeisterSequence& seq, const CongruenceReport& rep) {
    std::string csv = "n,R,S_n,S_n_mod_n,P_n,P_n_over_n\n";
    for (const auto& e : rep.per_n) {
        mpz_class pn = e.sum;
        mpz_class orbits = e.pass ? mpz_class(pn / e.n) : mpz_class(0);
        csv += std::to_string(e.n) + "," + seq.at(e.n).to_string() + "," + e.sum.get_str() + "," +
               e.residue.get_str() + "," + pn.get_str() + "," +
               (e.pass ? orbits.get_str() : std::string("-")) + "\n";
    }
    return csv;
}

}  // namespace tbf::io
