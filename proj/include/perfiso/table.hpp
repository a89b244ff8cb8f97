#pragma once

// Character-table data model: JSON ingestion, validation through the exact
// orthogonality relations, and class arithmetic (inverse classes, p-part /
// p'-part factorization) driven entirely by the supplied power maps.

#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cyclo.hpp"
#include "numutil.hpp"

namespace perfiso {

struct ClassData {
    std::string name;
    long size = 0;
    long order = 0;                 // element order o(g)
    std::map<long, int> power_maps; // prime -> class index of g^q

    friend bool operator==(const ClassData&, const ClassData&) = default;
};

class CharTable {
public:
    std::string name;
    long group_order = 0;
    long exponent = 0;
    std::vector<ClassData> classes;
    std::vector<std::vector<CycNum>> irreducibles; // rows = characters
    std::map<long, std::vector<std::vector<int>>> block_override;

    int n() const { return static_cast<int>(classes.size()); }

    const CycNum& value(int chi, int cls) const { return irreducibles[chi][cls]; }

    long degree(int chi) const { return degrees_[chi]; }

    long class_size(int i) const { return classes[i].size; }
    long centralizer_order(int i) const { return group_order / classes[i].size; }

    int inverse_class(int i) const { return inverse_[i]; }

    /// Class of g_i^e, by composing prime power maps over the factorization
    /// of e (reduced modulo the element order).
    int power_class(int i, long e) const {
        long o = classes[i].order;
        e %= o;
        if (e < 0) e += o;
        if (e == 0) return 0;
        int cls = i;
        for (auto& [q, mult] : factorize(e))
            for (int t = 0; t < mult; ++t) {
                auto it = classes[cls].power_maps.find(q);
                if (it == classes[cls].power_maps.end())
                    throw Error("power map for prime " + std::to_string(q) + " missing on class " +
                                classes[cls].name + " of table " + name);
                cls = it->second;
            }
        return cls;
    }

    /// Classes of (g_p, g_{p'}) with g = g_p g_{p'}.
    std::pair<int, int> p_decompose(int i, long p) const {
        long o = classes[i].order;
        long pa = p_part(o, p);
        long m = o / pa;
        if (pa == 1) return {0, i};
        if (m == 1) return {i, 0};
        long ep = m * inverse_mod(m, pa) % o;
        long em = pa * inverse_mod(pa, m) % o;
        return {power_class(i, ep), power_class(i, em)};
    }

    bool is_p_singular(int i, long p) const { return classes[i].order % p == 0; }

    std::vector<int> p_singular_classes(long p) const {
        std::vector<int> out;
        for (int i = 0; i < n(); ++i)
            if (is_p_singular(i, p)) out.push_back(i);
        return out;
    }

    std::vector<int> p_regular_classes(long p) const {
        std::vector<int> out;
        for (int i = 0; i < n(); ++i)
            if (!is_p_singular(i, p)) out.push_back(i);
        return out;
    }

    /// If |G| is a prime power p^k with k >= 1, returns p.
    std::optional<long> prime_power_order() const {
        auto f = factorize(group_order);
        if (f.size() == 1) return f.begin()->first;
        return std::nullopt;
    }

    /// Row index whose value vector equals `values`, if any.
    std::optional<int> find_row(const std::vector<CycNum>& values) const {
        for (int r = 0; r < n(); ++r)
            if (irreducibles[r] == values) return r;
        return std::nullopt;
    }

    bool same_table(const CharTable& o) const {
        return group_order == o.group_order && classes == o.classes && irreducibles == o.irreducibles;
    }

    void finalize(); // validation; called by parse_table

private:
    std::vector<long> degrees_;
    std::vector<int> inverse_;
};

using TablePtr = std::shared_ptr<const CharTable>;

inline void CharTable::finalize() {
    const int nn = n();
    if (nn == 0) throw Error("table " + name + ": no classes");
    if (group_order <= 0) throw Error("table " + name + ": order must be positive");
    if (exponent <= 0) throw Error("table " + name + ": exponent must be positive");
    if (static_cast<int>(irreducibles.size()) != nn)
        throw Error("table " + name + ": number of characters (" + std::to_string(irreducibles.size()) +
                    ") != number of classes (" + std::to_string(nn) + ")");
    for (auto& row : irreducibles)
        if (static_cast<int>(row.size()) != nn) throw Error("table " + name + ": ragged character row");

    if (classes[0].size != 1 || classes[0].order != 1)
        throw Error("table " + name + ": identity class must be index 0 with size 1 and order 1");

    long total = 0;
    for (auto& c : classes) {
        if (c.size <= 0 || group_order % c.size != 0)
            throw Error("table " + name + ": class " + c.name + " size does not divide group order");
        if (c.order <= 0 || exponent % c.order != 0)
            throw Error("table " + name + ": class " + c.name + " element order does not divide exponent");
        total += c.size;
    }
    if (total != group_order)
        throw Error("table " + name + ": class sizes sum to " + std::to_string(total) +
                    ", expected " + std::to_string(group_order));

    // power maps: every prime dividing |G| must be present; images consistent
    auto required = prime_divisors(group_order);
    for (int i = 0; i < nn; ++i) {
        const auto& c = classes[i];
        for (long q : required)
            if (!c.power_maps.count(q))
                throw Error("table " + name + ": class " + c.name + " missing power map for prime " +
                            std::to_string(q));
        for (auto& [q, img] : c.power_maps) {
            if (!is_prime(q)) throw Error("table " + name + ": power map key " + std::to_string(q) + " not prime");
            if (img < 0 || img >= nn) throw Error("table " + name + ": power map image out of range");
            long expect = c.order / gcd_long(c.order, q);
            if (classes[img].order != expect)
                throw Error("table " + name + ": inconsistent power map: class " + c.name + "^" +
                            std::to_string(q) + " lands in class of order " +
                            std::to_string(classes[img].order) + ", expected " + std::to_string(expect));
        }
    }

    // values must live in Q_exponent
    for (int r = 0; r < nn; ++r)
        for (int j = 0; j < nn; ++j)
            if (exponent % irreducibles[r][j].modulus() != 0)
                throw Error("table " + name + ": character value " + irreducibles[r][j].str() +
                            " not in Q_" + std::to_string(exponent));

    degrees_.resize(nn);
    for (int r = 0; r < nn; ++r) {
        const CycNum& d = irreducibles[r][0];
        if (!d.is_rational() || d.rational_value().get_den() != 1 || d.rational_value() <= 0)
            throw Error("table " + name + ": degree of character " + std::to_string(r) +
                        " is not a positive integer: " + d.str());
        degrees_[r] = mpz_class(d.rational_value().get_num()).get_si();
    }

    inverse_.resize(nn);
    for (int i = 0; i < nn; ++i) inverse_[i] = power_class(i, classes[i].order - 1);
    for (int i = 0; i < nn; ++i)
        if (inverse_[inverse_[i]] != i)
            throw Error("table " + name + ": inverse map is not an involution at class " + classes[i].name);

    // first orthogonality: [chi, psi] = delta
    for (int r = 0; r < nn; ++r)
        for (int s = 0; s <= r; ++s) {
            CycNum sum(0);
            for (int i = 0; i < nn; ++i)
                sum += CycNum(classes[i].size) * irreducibles[r][i] * irreducibles[s][inverse_[i]];
            CycNum expect(r == s ? group_order : 0);
            if (sum != expect)
                throw Error("table " + name + ": first orthogonality fails for characters (" +
                            std::to_string(r) + "," + std::to_string(s) + "): got " + sum.str() + "/" +
                            std::to_string(group_order));
        }

    // second orthogonality: column sums against inverted columns
    for (int i = 0; i < nn; ++i)
        for (int j = 0; j < nn; ++j) {
            CycNum sum(0);
            for (int r = 0; r < nn; ++r) sum += irreducibles[r][i] * irreducibles[r][inverse_[j]];
            CycNum expect(i == j ? centralizer_order(i) : 0);
            if (sum != expect)
                throw Error("table " + name + ": second orthogonality fails for classes (" + classes[i].name +
                            "," + classes[j].name + "): got " + sum.str());
        }

    for (auto& [p, blocks] : block_override) {
        std::set<int> seen;
        for (auto& blk : blocks)
            for (int r : blk) {
                if (r < 0 || r >= nn || !seen.insert(r).second)
                    throw Error("table " + name + ": invalid blocks override for p=" + std::to_string(p));
            }
        if (static_cast<int>(seen.size()) != nn)
            throw Error("table " + name + ": blocks override for p=" + std::to_string(p) +
                        " does not partition the characters");
    }
}

inline CharTable parse_table(const std::string& json_text, const std::string& origin = "<memory>") {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const std::exception& e) {
        throw Error("table " + origin + ": JSON parse failure: " + e.what());
    }
    CharTable t;
    try {
        t.name = j.at("name").get<std::string>();
        t.group_order = j.at("order").get<long>();
        t.exponent = j.at("exponent").get<long>();
        for (auto& jc : j.at("classes")) {
            ClassData c;
            c.name = jc.at("name").get<std::string>();
            c.size = jc.at("size").get<long>();
            c.order = jc.at("order").get<long>();
            for (auto& [key, val] : jc.at("powermaps").items())
                c.power_maps[std::stol(key)] = val.get<int>();
            t.classes.push_back(std::move(c));
        }
        for (auto& jr : j.at("irreducibles")) {
            std::vector<CycNum> row;
            for (auto& cell : jr) row.push_back(CycNum::parse(cell.get<std::string>()));
            t.irreducibles.push_back(std::move(row));
        }
        if (j.contains("blocks"))
            for (auto& [key, val] : j.at("blocks").items()) {
                std::vector<std::vector<int>> blocks;
                for (auto& blk : val) blocks.push_back(blk.get<std::vector<int>>());
                t.block_override[std::stol(key)] = std::move(blocks);
            }
    } catch (const Error&) {
        throw;
    } catch (const std::exception& e) {
        throw Error("table " + origin + ": schema violation: " + e.what());
    }
    t.finalize();
    return t;
}

inline TablePtr load_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open table file: " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return std::make_shared<const CharTable>(parse_table(ss.str(), path));
}

} // namespace perfiso
