#pragma once

#include <charconv>
#include <cstddef>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "pfcm/errors.hpp"
#include "pfcm/injection.hpp"
#include "pfcm/mixture.hpp"

namespace pfcm {

// Flat key = value file. '#' starts a comment; values are scalars or
// space-separated number lists. Keys are case-sensitive.
//
// Mixture schema:
//   n = 1000
//   s = 2
//   seed = 42
//   components = 2
//   weight.1 = 0.5
//   mean.1   = 0 0
//   cov.1    = 1 0 0 1        # row-major s*s, or "identity", or "identity*<scale>"
//   weight.2 = 0.5
//   mean.2   = 8 8
//   cov.2    = identity
class KeyValueFile {
public:
    static KeyValueFile parse_file(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw ConfigError("cannot open config '" + path + "'");
        std::stringstream buf;
        buf << in.rdbuf();
        return parse(buf.str(), path);
    }

    static KeyValueFile parse(const std::string& text, const std::string& origin = "<string>") {
        KeyValueFile kv;
        kv.origin_ = origin;
        std::istringstream in(text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            const auto eq = line.find('=');
            if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
            if (eq == std::string::npos)
                throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key = value");
            kv.entries_[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
        }
        return kv;
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string get(const std::string& key) const {
        const auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError(origin_ + ": missing key '" + key + "'");
        return it->second;
    }

    double get_double(const std::string& key) const {
        const std::string raw = get(key);
        double v;
        const auto res = std::from_chars(raw.data(), raw.data() + raw.size(), v);
        if (res.ec != std::errc{} || res.ptr != raw.data() + raw.size())
            throw ConfigError(origin_ + ": key '" + key + "' is not a number: '" + raw + "'");
        return v;
    }

    std::size_t get_size(const std::string& key) const {
        const double v = get_double(key);
        if (v < 0 || v != static_cast<double>(static_cast<std::size_t>(v)))
            throw ConfigError(origin_ + ": key '" + key + "' must be a non-negative integer");
        return static_cast<std::size_t>(v);
    }

    std::vector<double> get_list(const std::string& key) const {
        std::istringstream in(get(key));
        std::vector<double> out;
        std::string tok;
        while (in >> tok) {
            double v;
            const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
            if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size())
                throw ConfigError(origin_ + ": key '" + key + "' has non-numeric entry '" + tok + "'");
            out.push_back(v);
        }
        return out;
    }

private:
    static std::string trim(const std::string& s) {
        const auto b = s.find_first_not_of(" \t\r\n");
        if (b == std::string::npos) return "";
        const auto e = s.find_last_not_of(" \t\r\n");
        return s.substr(b, e - b + 1);
    }

    std::string origin_;
    std::map<std::string, std::string> entries_;
};

inline MixtureSpec mixture_from_config(const KeyValueFile& kv) {
    MixtureSpec spec;
    spec.n = kv.get_size("n");
    const std::size_t s = kv.get_size("s");
    spec.seed = kv.has("seed") ? static_cast<std::uint64_t>(kv.get_size("seed")) : 0;
    const std::size_t comps = kv.has("components") ? kv.get_size("components") : 2;
    for (std::size_t i = 1; i <= comps; ++i) {
        const std::string suffix = "." + std::to_string(i);
        MixtureComponent comp;
        comp.weight = kv.has("weight" + suffix) ? kv.get_double("weight" + suffix)
                                                : 1.0 / static_cast<double>(comps);
        comp.mean = kv.get_list("mean" + suffix);
        if (comp.mean.size() != s)
            throw ConfigError("mean" + suffix + " must list " + std::to_string(s) + " values");
        const std::string cov_key = "cov" + suffix;
        std::string cov_raw = kv.has(cov_key) ? kv.get(cov_key) : "identity";
        double scale = 1.0;
        if (cov_raw.rfind("identity", 0) == 0) {
            const auto star = cov_raw.find('*');
            if (star != std::string::npos) {
                const std::string num = cov_raw.substr(star + 1);
                const auto res = std::from_chars(num.data(), num.data() + num.size(), scale);
                if (res.ec != std::errc{})
                    throw ConfigError(cov_key + ": bad identity scale '" + num + "'");
            }
            comp.covariance = Matrix(s, s);
            for (std::size_t j = 0; j < s; ++j) comp.covariance(j, j) = scale;
        } else {
            const auto flat = kv.get_list(cov_key);
            if (flat.size() != s * s)
                throw ConfigError(cov_key + " must list " + std::to_string(s * s) +
                                  " row-major values");
            comp.covariance = Matrix(s, s);
            for (std::size_t r = 0; r < s; ++r)
                for (std::size_t q = 0; q < s; ++q) comp.covariance(r, q) = flat[r * s + q];
        }
        spec.components.push_back(std::move(comp));
    }
    validate_mixture(spec);
    return spec;
}

inline InjectionSpec injection_from_config(const KeyValueFile& kv) {
    InjectionSpec spec;
    spec.fraction = kv.get_double("fraction");
    spec.seed = kv.has("seed") ? static_cast<std::uint64_t>(kv.get_size("seed")) : 0;
    return spec;
}

}  // namespace pfcm
