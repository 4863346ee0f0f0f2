// Copyright 2026 The sicfid Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <gmpxx.h>

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "sicfid/bigreal.hpp"
#include "sicfid/errors.hpp"
#include "sicfid/heisenberg.hpp"
#include "sicfid/polyfield.hpp"
#include "sicfid/quadfield.hpp"

namespace sicfid {

using Json = nlohmann::ordered_json;

inline std::string read_text(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot write " + path.string());
    out << text;
}

inline Json parse_json(const std::string& text, const std::string& what) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(what + ": " + e.what());
    }
}

namespace detail {

inline const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline long get_long(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_number_integer()) throw ParseError(where + ": field '" + key + "' must be an integer");
    return v.get<long>();
}

inline std::string get_string(const Json& j, const char* key, const std::string& where) {
    const Json& v = field(j, key, where);
    if (!v.is_string()) throw ParseError(where + ": field '" + key + "' must be a string");
    return v.get<std::string>();
}

inline mpz_class parse_int(const Json& v, const std::string& where) {
    try {
        if (v.is_string()) return mpz_class(v.get<std::string>(), 10);
        if (v.is_number_integer()) return mpz_class(v.dump(), 10);
    } catch (const std::invalid_argument&) {
    }
    throw ParseError(where + ": expected an integer (string or number)");
}

/// [num, den]
inline mpq_class parse_rational(const Json& v, const std::string& where) {
    if (!v.is_array() || v.size() != 2) throw ParseError(where + ": rational must be [num, den]");
    mpz_class n = parse_int(v[0], where + "[0]"), d = parse_int(v[1], where + "[1]");
    if (d == 0) throw ParseError(where + ": zero denominator");
    mpq_class q(n, d);
    q.canonicalize();
    return q;
}

inline QuadElem parse_quad(const Json& v, long D, const std::string& where) {
    if (!v.is_array() || v.size() != 2 || !v[0].is_array()) throw ParseError(where + ": K element must be [[a_num,a_den],[b_num,b_den]]");
    return QuadElem(parse_rational(v[0], where + "[0]"), parse_rational(v[1], where + "[1]"), D);
}

inline std::string rational_text(const mpq_class& q) {
    return "[\"" + q.get_num().get_str() + "\",\"" + q.get_den().get_str() + "\"]";
}

inline std::string quad_text(const QuadElem& x) { return "[" + rational_text(x.a()) + "," + rational_text(x.b()) + "]"; }

inline std::string quoted(const std::string& s) { return Json(s).dump(); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Polynomial files

struct PolyFile {
    std::string ring = "K";      ///< "Q", "K" or "HK"
    long D = 0;
    long hk_generator = 0;        ///< r with H_K = K(√r), ring "HK" only
    KPoly k;                      ///< ring "Q" or "K"
    std::optional<HKPoly> hk;     ///< ring "HK"
    std::optional<long> cycle_length;
    std::optional<long> block_count;
    std::string provenance;
};

inline PolyFile poly_from_json(const Json& j, const std::string& where = "poly") {
    PolyFile f;
    f.ring = detail::get_string(j, "ring", where);
    if (f.ring != "Q" && f.ring != "K" && f.ring != "HK") throw ParseError(where + ": unknown ring tag '" + f.ring + "'");
    f.D = detail::get_long(j, "D", where);
    if (f.ring != "Q" && f.D < 2) throw ParseError(where + ": ring K needs D >= 2");
    if (j.contains("hk_generator")) f.hk_generator = detail::get_long(j, "hk_generator", where);
    if (f.ring == "HK" && f.hk_generator < 2) throw ParseError(where + ": ring HK needs hk_generator");
    if (j.contains("provenance")) f.provenance = detail::get_string(j, "provenance", where);
    if (j.contains("cycle_length")) f.cycle_length = detail::get_long(j, "cycle_length", where);
    if (j.contains("block_count")) f.block_count = detail::get_long(j, "block_count", where);
    const Json& c = detail::field(j, "coeffs", where);
    if (!c.is_array()) throw ParseError(where + ": coeffs must be a list");
    std::vector<QuadElem> kc;
    std::vector<HKElem> hc;
    for (size_t i = 0; i < c.size(); ++i) {
        std::string w = where + ".coeffs[" + std::to_string(i) + "]";
        if (f.ring == "Q") {
            kc.push_back(QuadElem::rational(detail::parse_rational(c[i], w), f.D));
        } else if (f.ring == "K") {
            kc.push_back(detail::parse_quad(c[i], f.D, w));
        } else {
            if (!c[i].is_array() || c[i].size() != 2) throw ParseError(w + ": H_K element must be [alpha, beta]");
            hc.emplace_back(detail::parse_quad(c[i][0], f.D, w + "[0]"), detail::parse_quad(c[i][1], f.D, w + "[1]"),
                            f.hk_generator);
        }
    }
    if (f.ring == "HK") f.hk = HKPoly(std::move(hc));
    else f.k = KPoly(std::move(kc));
    return f;
}

inline PolyFile parse_poly_text(const std::string& text, const std::string& where = "poly") {
    return poly_from_json(parse_json(text, where), where);
}

inline PolyFile parse_poly(const std::filesystem::path& path) { return parse_poly_text(read_text(path), path.string()); }

/// Canonical text: fixed key order, one coefficient per line, integers as strings.
inline std::string serialize_poly(const PolyFile& f) {
    std::ostringstream os;
    os << "{\n  \"ring\": " << detail::quoted(f.ring) << ",\n  \"D\": " << f.D << ",\n";
    if (f.ring == "HK") os << "  \"hk_generator\": " << f.hk_generator << ",\n";
    if (f.cycle_length) os << "  \"cycle_length\": " << *f.cycle_length << ",\n";
    if (f.block_count) os << "  \"block_count\": " << *f.block_count << ",\n";
    if (!f.provenance.empty()) os << "  \"provenance\": " << detail::quoted(f.provenance) << ",\n";
    os << "  \"coeffs\": [";
    std::vector<std::string> items;
    if (f.ring == "HK") {
        if (f.hk) {
            for (const auto& c : f.hk->coeffs()) items.push_back("[" + detail::quad_text(c.alpha()) + "," + detail::quad_text(c.beta()) + "]");
        }
    } else {
        for (const auto& c : f.k.coeffs()) {
            if (f.ring == "Q") {
                if (!c.is_rational()) throw InvalidInput("serialize_poly: irrational coefficient in ring Q");
                items.push_back(detail::rational_text(c.a()));
            } else {
                items.push_back(detail::quad_text(c));
            }
        }
    }
    for (size_t i = 0; i < items.size(); ++i) os << (i ? ",\n    " : "\n    ") << items[i];
    os << (items.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return os.str();
}

inline PolyFile make_poly_file(const KPoly& p, long D, std::string provenance = {}) {
    PolyFile f;
    f.ring = "K";
    f.D = D;
    f.k = p;
    f.provenance = std::move(provenance);
    return f;
}

// ---------------------------------------------------------------------------
// Stark unit files

struct StarkFile {
    long d = 0;
    long D = 0;
    long ell = 0;
    long precision = 0;
    std::string generator_label;
    std::vector<std::string> values;
    std::string provenance;

    std::vector<Real> reals(Precision p) const {
        std::vector<Real> out;
        for (const auto& v : values) out.emplace_back(v, p);
        return out;
    }
};

inline StarkFile parse_stark_text(const std::string& text, const std::string& where = "stark") {
    Json j = parse_json(text, where);
    StarkFile s;
    s.d = detail::get_long(j, "d", where);
    s.D = detail::get_long(j, "D", where);
    s.ell = detail::get_long(j, "ell", where);
    s.precision = detail::get_long(j, "precision", where);
    s.generator_label = detail::get_string(j, "generator_label", where);
    if (j.contains("provenance")) s.provenance = detail::get_string(j, "provenance", where);
    const Json& v = detail::field(j, "values", where);
    if (!v.is_array()) throw ParseError(where + ": values must be a list");
    for (size_t i = 0; i < v.size(); ++i) {
        if (!v[i].is_string()) throw ParseError(where + ".values[" + std::to_string(i) + "]: decimal string expected");
        std::string t = v[i].get<std::string>();
        try {
            Real(t, Precision{10});
        } catch (const std::invalid_argument&) {
            throw ParseError(where + ".values[" + std::to_string(i) + "]: not a decimal number");
        }
        s.values.push_back(std::move(t));
    }
    return s;
}

inline StarkFile parse_stark(const std::filesystem::path& path) { return parse_stark_text(read_text(path), path.string()); }

inline std::string serialize_stark(const StarkFile& s) {
    std::ostringstream os;
    os << "{\n  \"d\": " << s.d << ",\n  \"D\": " << s.D << ",\n  \"ell\": " << s.ell << ",\n  \"precision\": " << s.precision
       << ",\n  \"generator_label\": " << detail::quoted(s.generator_label) << ",\n";
    if (!s.provenance.empty()) os << "  \"provenance\": " << detail::quoted(s.provenance) << ",\n";
    os << "  \"values\": [";
    for (size_t i = 0; i < s.values.size(); ++i) os << (i ? ",\n    " : "\n    ") << detail::quoted(s.values[i]);
    os << (s.values.empty() ? "]\n}\n" : "\n  ]\n}\n");
    return os.str();
}

// ---------------------------------------------------------------------------
// Fiducial files

/// Numeric components are decimal [re, im] pairs. Exact files add the modulus
/// p4, the root selecting ι, and each component as a residue polynomial.
struct FiducialFile {
    long d = 0;
    long D = 0;
    long ell = 0;
    long theta = 0;
    int sign = 1;
    std::string mode = "numeric";
    long precision = 0;
    std::vector<std::pair<std::string, std::string>> numeric;
    std::optional<KPoly> modulus;
    std::pair<std::string, std::string> embedding;
    std::vector<KPoly> residues;
};

inline FiducialFile fiducial_to_file(const FiducialVector& f, long D) {
    FiducialFile out;
    out.d = f.d;
    out.D = D;
    out.ell = f.ell;
    out.theta = f.theta;
    out.sign = f.sign;
    out.precision = f.precision().digits;
    for (const auto& c : f.components) out.numeric.emplace_back(c.re.to_string(out.precision), c.im.to_string(out.precision));
    if (f.exact) {
        out.mode = "exact";
        out.modulus = f.exact->ring->modulus();
        // ι(γ) = z_0 = component at θ^0 = 1
        out.embedding = out.numeric.at(1);
        for (long r = 0; r < f.d; ++r) {
            int l = f.exact->label[static_cast<size_t>(r)];
            out.residues.push_back(l < 0 ? KPoly::constant(f.exact->c0) : f.exact->z[static_cast<size_t>(l)].to_poly());
        }
    }
    return out;
}

inline std::string serialize_fiducial(const FiducialFile& f) {
    std::ostringstream os;
    os << "{\n  \"d\": " << f.d << ",\n  \"D\": " << f.D << ",\n  \"ell\": " << f.ell << ",\n  \"theta\": " << f.theta
       << ",\n  \"sign\": " << f.sign << ",\n  \"mode\": " << detail::quoted(f.mode) << ",\n  \"precision\": " << f.precision
       << ",\n";
    if (f.mode == "exact") {
        std::string mod = serialize_poly(make_poly_file(*f.modulus, f.D));
        // indent the nested object
        std::string ind;
        for (char ch : mod.substr(0, mod.size() - 1)) {
            ind += ch;
            if (ch == '\n') ind += "  ";
        }
        os << "  \"modulus\": " << ind << ",\n";
        os << "  \"embedding\": [" << detail::quoted(f.embedding.first) << "," << detail::quoted(f.embedding.second) << "],\n";
        os << "  \"residues\": [";
        for (size_t i = 0; i < f.residues.size(); ++i) {
            os << (i ? ",\n    [" : "\n    [");
            const auto& cs = f.residues[i].coeffs();
            for (size_t k = 0; k < cs.size(); ++k) os << (k ? "," : "") << detail::quad_text(cs[k]);
            os << "]";
        }
        os << "\n  ],\n";
    }
    os << "  \"components\": [";
    for (size_t i = 0; i < f.numeric.size(); ++i) {
        os << (i ? ",\n    [" : "\n    [") << detail::quoted(f.numeric[i].first) << "," << detail::quoted(f.numeric[i].second) << "]";
    }
    os << "\n  ]\n}\n";
    return os.str();
}

inline FiducialFile parse_fiducial_text(const std::string& text, const std::string& where = "fiducial") {
    Json j = parse_json(text, where);
    FiducialFile f;
    f.d = detail::get_long(j, "d", where);
    f.D = detail::get_long(j, "D", where);
    f.ell = detail::get_long(j, "ell", where);
    f.theta = detail::get_long(j, "theta", where);
    f.sign = static_cast<int>(detail::get_long(j, "sign", where));
    if (f.sign != 1 && f.sign != -1) throw ParseError(where + ": sign must be +1 or -1");
    f.mode = detail::get_string(j, "mode", where);
    if (f.mode != "numeric" && f.mode != "exact") throw ParseError(where + ": mode must be numeric or exact");
    f.precision = detail::get_long(j, "precision", where);
    const Json& c = detail::field(j, "components", where);
    if (!c.is_array() || static_cast<long>(c.size()) != f.d) throw ParseError(where + ": components must list d entries");
    for (size_t i = 0; i < c.size(); ++i) {
        if (!c[i].is_array() || c[i].size() != 2 || !c[i][0].is_string() || !c[i][1].is_string()) {
            throw ParseError(where + ".components[" + std::to_string(i) + "]: expected [re, im] decimal strings");
        }
        f.numeric.emplace_back(c[i][0].get<std::string>(), c[i][1].get<std::string>());
    }
    if (f.mode == "exact") {
        f.modulus = poly_from_json(detail::field(j, "modulus", where), where + ".modulus").k;
        const Json& e = detail::field(j, "embedding", where);
        if (!e.is_array() || e.size() != 2) throw ParseError(where + ": embedding must be [re, im]");
        f.embedding = {e[0].get<std::string>(), e[1].get<std::string>()};
        const Json& r = detail::field(j, "residues", where);
        if (!r.is_array() || static_cast<long>(r.size()) != f.d) throw ParseError(where + ": residues must list d entries");
        for (size_t i = 0; i < r.size(); ++i) {
            std::vector<QuadElem> cs;
            for (size_t k = 0; k < r[i].size(); ++k) {
                cs.push_back(detail::parse_quad(r[i][k], f.D, where + ".residues[" + std::to_string(i) + "]"));
            }
            f.residues.emplace_back(std::move(cs));
        }
    }
    return f;
}

inline FiducialFile parse_fiducial(const std::filesystem::path& path) { return parse_fiducial_text(read_text(path), path.string()); }

/// Rebuild a FiducialVector; exact files are checked for consistency with the θ labelling.
inline FiducialVector fiducial_from_file(const FiducialFile& f) {
    DimensionInfo info = classify_dimension(f.d);
    if (info.D != f.D || info.ell != f.ell) throw InvalidInput("fiducial file: D/ell disagree with d");
    Precision p{f.precision};
    FiducialVector v;
    v.d = f.d;
    v.ell = f.ell;
    v.m = info.m;
    v.theta = f.theta;
    v.sign = f.sign;
    v.x0 = info.x0();
    for (const auto& [re, im] : f.numeric) v.components.emplace_back(Real(re, p), Real(im, p));
    if (f.mode == "exact") {
        auto ring = std::make_shared<const ResidueRing>(*f.modulus);
        ExactFiducial e;
        e.ring = ring;
        e.label = theta_labels(f.d, f.theta, info.m);
        if (f.residues[0].degree() > 0) throw InvalidInput("fiducial file: component 0 must lie in K");
        e.c0 = f.residues[0].coeff_or_zero(0, QuadElem::rational(0, f.D));
        if (e.c0 != v.x0 * static_cast<long>(f.sign)) throw InvalidInput("fiducial file: component 0 is not sign*x0");
        std::vector<std::optional<ResidueElem>> z(static_cast<size_t>(info.m));
        for (long r = 1; r < f.d; ++r) {
            ResidueElem x = ResidueElem::from_poly(ring, f.residues[static_cast<size_t>(r)]);
            auto& slot = z[static_cast<size_t>(e.label[static_cast<size_t>(r)])];
            if (!slot) slot = x;
            else if (!(*slot == x)) throw InvalidInput("fiducial file: components break the theta labelling at r=" + std::to_string(r));
        }
        for (auto& s : z) e.z.push_back(*s);
        v.exact = std::move(e);
        v.mode = FiducialMode::exact;
        // numeric components must be the ι-image
        Complex root(Real(f.embedding.first, p), Real(f.embedding.second, p));
        root = newton_polish(*f.modulus, Embedding::j, root, p);
        for (long r = 1; r < f.d; ++r) {
            int l = v.exact->label[static_cast<size_t>(r)];
            Complex w = v.exact->z[static_cast<size_t>(l)].embed(root);
            if (abs(w - v.components[static_cast<size_t>(r)]) > pow10(-(p.digits / 2), p)) {
                throw InvalidInput("fiducial file: numeric component " + std::to_string(r) + " is not the embedded residue");
            }
        }
    }
    return v;
}

}  // namespace sicfid
