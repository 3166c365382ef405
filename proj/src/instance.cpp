#include "mobdd/instance.hpp"

#include "mobdd/csv.hpp"
#include "mobdd/error.hpp"

#include <fstream>
#include <numeric>
#include <random>
#include <sstream>

namespace mobdd {

Value MkpInstance::total_weight() const {
    return std::accumulate(weights.begin(), weights.end(), Value{0});
}

void MkpInstance::validate() const {
    if (p < 1 || n < 1) {
        throw Error("instance " + id + ": p and n must be positive");
    }
    if (static_cast<int>(weights.size()) != n || static_cast<int>(values.size()) != p) {
        throw Error("instance " + id + ": dimension mismatch");
    }
    for (Value w : weights) {
        if (w < 1) throw Error("instance " + id + ": weights must be positive");
    }
    for (const auto& row : values) {
        if (static_cast<int>(row.size()) != n) throw Error("instance " + id + ": value row length mismatch");
        for (Value a : row) {
            if (a < 1) throw Error("instance " + id + ": values must be positive");
        }
    }
    if (capacity < 1) throw Error("instance " + id + ": capacity must be positive");
}

std::string instance_id(int p, int n, std::uint64_t seed, const std::string& split) {
    return "kp_" + std::to_string(p) + "_" + std::to_string(n) + "_" + std::to_string(seed) + "_" + split;
}

Value half_capacity(const std::vector<Value>& weights) {
    return (std::accumulate(weights.begin(), weights.end(), Value{0}) + 1) / 2;
}

MkpInstance generate_instance(std::uint64_t seed, int p, int n, const std::string& split) {
    if (p < 1 || n < 1) throw Error("generate_instance: p and n must be positive");
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<Value> coef(1, 100);

    MkpInstance inst;
    inst.id = instance_id(p, n, seed, split);
    inst.p = p;
    inst.n = n;
    inst.weights.resize(n);
    for (auto& w : inst.weights) w = coef(rng);
    inst.values.assign(p, std::vector<Value>(n));
    for (auto& row : inst.values) {
        for (auto& a : row) a = coef(rng);
    }
    inst.capacity = half_capacity(inst.weights);
    return inst;
}

namespace {

std::vector<Value> parse_row(const std::string& line, const std::string& source, std::size_t lineno) {
    std::istringstream ss(line);
    std::vector<Value> row;
    std::string tok;
    while (ss >> tok) {
        std::size_t used = 0;
        Value v = 0;
        try {
            v = std::stoll(tok, &used);
        } catch (const std::exception&) {
            throw ParseError(source, lineno, "not an integer: '" + tok + "'");
        }
        if (used != tok.size()) throw ParseError(source, lineno, "not an integer: '" + tok + "'");
        if (v < 1) throw ParseError(source, lineno, "entries must be positive, got " + tok);
        row.push_back(v);
    }
    return row;
}

}  // namespace

MkpInstance parse_instance(std::istream& in, const std::string& source) {
    std::vector<std::string> lines;
    for (std::string line; std::getline(in, line);) lines.push_back(line);
    while (!lines.empty() && lines.back().find_first_not_of(" \t\r") == std::string::npos) lines.pop_back();

    auto row_at = [&](std::size_t idx) {
        if (idx >= lines.size()) throw ParseError(source, idx + 1, "unexpected end of file");
        return parse_row(lines[idx], source, idx + 1);
    };

    MkpInstance inst;
    auto header = row_at(0);
    if (header.size() != 2) throw ParseError(source, 1, "header must be 'p n'");
    inst.p = static_cast<int>(header[0]);
    inst.n = static_cast<int>(header[1]);

    auto cap = row_at(1);
    if (cap.size() != 1) throw ParseError(source, 2, "capacity line must hold one integer");
    inst.capacity = cap[0];

    inst.weights = row_at(2);
    if (static_cast<int>(inst.weights.size()) != inst.n) {
        throw ParseError(source, 3, "expected " + std::to_string(inst.n) + " weights, got " +
                                        std::to_string(inst.weights.size()));
    }
    for (int k = 0; k < inst.p; ++k) {
        auto row = row_at(3 + k);
        if (static_cast<int>(row.size()) != inst.n) {
            throw ParseError(source, 4 + k, "dimension mismatch: expected " + std::to_string(inst.n) + " values");
        }
        inst.values.push_back(std::move(row));
    }
    if (lines.size() > static_cast<std::size_t>(3 + inst.p)) {
        throw ParseError(source, 4 + inst.p,
                         "dimension mismatch: header declares " + std::to_string(inst.p) + " objective rows");
    }
    return inst;
}

MkpInstance read_instance(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open instance file " + path.string());
    MkpInstance inst = parse_instance(in, path.string());
    inst.id = path.stem().string();
    return inst;
}

void format_instance(std::ostream& out, const MkpInstance& instance) {
    auto row = [&](const std::vector<Value>& xs) {
        for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? " " : "") << xs[i];
        out << '\n';
    };
    out << instance.p << ' ' << instance.n << '\n' << instance.capacity << '\n';
    row(instance.weights);
    for (const auto& r : instance.values) row(r);
}

void write_instance(const MkpInstance& instance, const std::filesystem::path& path) {
    std::ostringstream out;
    format_instance(out, instance);
    write_file_atomic(path, out.str());
}

}  // namespace mobdd
