#include "kmrich/model.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

#include "kmrich/errors.hpp"

namespace kmr {

DistanceConfig::DistanceConfig(std::vector<Rational> a, std::vector<Rational> p)
    : a_(std::move(a)), p_(std::move(p)) {
    if (a_.empty()) throw std::invalid_argument("config needs at least one pair");
    if (p_.size() + 1 != a_.size())
        throw std::invalid_argument("config with " + std::to_string(a_.size()) + " pairs needs " +
                                    std::to_string(a_.size() - 1) + " gaps, got " +
                                    std::to_string(p_.size()));
    for (std::size_t j = 0; j < a_.size(); ++j)
        if (a_[j].sign() <= 0)
            throw NonPositiveDistanceError("non-positive distance a_" + std::to_string(j + 1) + " = " +
                                           a_[j].str());
    for (std::size_t j = 0; j < p_.size(); ++j)
        if (p_[j].sign() <= 0)
            throw NonPositiveDistanceError("non-positive distance p_" + std::to_string(j + 1) + "," +
                                           std::to_string(j + 2) + " = " + p_[j].str());
}

DistanceConfig DistanceConfig::scaled(const Rational& factor) const {
    auto scale = [&](std::vector<Rational> v) {
        for (auto& x : v) x *= factor;
        return v;
    };
    return DistanceConfig(scale(a_), scale(p_));
}

Partition::Partition(std::vector<int> labels, int k) : labels_(std::move(labels)), k_(k) {
    for (int l : labels_)
        if (l < 0 || l >= k_) throw std::invalid_argument("partition label out of range");
}

std::vector<int> Partition::canonical_labels() const {
    std::vector<int> remap(static_cast<std::size_t>(k_), -1);
    std::vector<int> out;
    out.reserve(labels_.size());
    int next = 0;
    for (int l : labels_) {
        if (remap[l] < 0) remap[l] = next++;
        out.push_back(remap[l]);
    }
    return out;
}

Partition Partition::canonical() const { return Partition(canonical_labels(), k_); }

int Partition::block_count() const {
    const auto canon = canonical_labels();
    return canon.empty() ? 0 : *std::max_element(canon.begin(), canon.end()) + 1;
}

std::vector<std::vector<int>> Partition::blocks() const {
    std::vector<std::vector<int>> out(static_cast<std::size_t>(block_count()));
    const auto canon = canonical_labels();
    for (std::size_t i = 0; i < canon.size(); ++i) out[canon[i]].push_back(static_cast<int>(i) + 1);
    return out;
}

Seeding::Seeding(std::vector<int> indices, int k) : indices_(std::move(indices)) {
    std::sort(indices_.begin(), indices_.end());
    if (static_cast<int>(indices_.size()) != k)
        throw std::invalid_argument("seeding needs exactly " + std::to_string(k) + " indices");
    if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end())
        throw std::invalid_argument("seeding indices must be distinct");
    if (!indices_.empty() && (indices_.front() < 1 || indices_.back() > 2 * k))
        throw std::invalid_argument("seeding index out of range 1.." + std::to_string(2 * k));
}

std::string Seeding::str() const {
    std::string out = "{";
    for (std::size_t i = 0; i < indices_.size(); ++i) {
        if (i) out += ",";
        out += std::to_string(indices_[i]);
    }
    return out + "}";
}

PointSet embed(const DistanceConfig& cfg) {
    PointSet xs;
    xs.reserve(2 * static_cast<std::size_t>(cfg.k()));
    Rational x;
    for (int j = 1; j <= cfg.k(); ++j) {
        if (j > 1) x += cfg.p_at(j - 1);
        xs.push_back(x);
        x += cfg.a_at(j);
        xs.push_back(x);
    }
    return xs;
}

ValidityReport validate(const DistanceConfig& cfg) {
    ValidityReport report;
    for (int j = 1; j < cfg.k(); ++j) {
        const Rational diff = (cfg.a_at(j) - cfg.a_at(j + 1)).abs();
        const Rational bound = cfg.p_at(j) * 2;
        if (diff >= bound) report.issues.push_back({j, diff == bound});
    }
    return report;
}

Partition target_partition(int k) {
    std::vector<int> labels;
    for (int j = 0; j < 2 * k; ++j) labels.push_back(j / 2);
    return Partition(std::move(labels), k);
}

DistanceConfig mirror(const DistanceConfig& cfg) {
    std::vector<Rational> a(cfg.a().rbegin(), cfg.a().rend());
    std::vector<Rational> p(cfg.p().rbegin(), cfg.p().rend());
    return DistanceConfig(std::move(a), std::move(p));
}

Seeding mirror_seeding(const Seeding& seeding, int k) {
    std::vector<int> out;
    for (int i : seeding.indices()) out.push_back(2 * k + 1 - i);
    return Seeding(std::move(out), k);
}

Partition mirror_partition(const Partition& partition) {
    const int k = partition.k();
    std::vector<int> labels;
    for (auto it = partition.labels().rbegin(); it != partition.labels().rend(); ++it)
        labels.push_back(k - 1 - *it);
    return Partition(std::move(labels), k);
}

namespace {

class ConfigParser {
public:
    explicit ConfigParser(std::string_view text) : text_(text) {}

    DistanceConfig parse() {
        skip_ws();
        auto a = section('a');
        skip_ws();
        std::vector<Rational> p;
        if (pos_ < text_.size()) {
            expect(';');
            skip_ws();
            if (pos_ < text_.size()) p = section('p');
            skip_ws();
        }
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return DistanceConfig(std::move(a), std::move(p));
    }

private:
    std::vector<Rational> section(char name) {
        if (pos_ >= text_.size() || text_[pos_] != name)
            throw ParseError(std::string("expected '") + name + "='", pos_);
        ++pos_;
        skip_ws();
        expect('=');
        std::vector<Rational> values;
        skip_ws();
        if (pos_ >= text_.size() || text_[pos_] == ';') {
            if (name == 'a') throw ParseError("empty distance list", pos_);
            return values;
        }
        for (;;) {
            skip_ws();
            values.push_back(number());
            skip_ws();
            if (pos_ < text_.size() && text_[pos_] == ',') {
                ++pos_;
                continue;
            }
            return values;
        }
    }

    Rational number() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '/' ||
                text_[pos_] == '-' || text_[pos_] == '+'))
            ++pos_;
        if (start == pos_) throw ParseError("expected a rational", start);
        try {
            return Rational::parse(text_.substr(start, pos_ - start));
        } catch (const std::exception& e) {
            throw ParseError(e.what(), start);
        }
    }

    void expect(char c) {
        if (pos_ >= text_.size() || text_[pos_] != c) throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

std::string join(const std::vector<Rational>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += values[i].str();
    }
    return out;
}

}  // namespace

DistanceConfig parse_config(std::string_view text) { return ConfigParser(text).parse(); }

std::string serialize_config(const DistanceConfig& cfg) {
    return "a=" + join(cfg.a()) + "; p=" + join(cfg.p());
}

nlohmann::ordered_json config_to_json(const DistanceConfig& cfg) {
    nlohmann::ordered_json j;
    j["k"] = cfg.k();
    auto strings = [](const std::vector<Rational>& v) {
        auto arr = nlohmann::ordered_json::array();
        for (const auto& x : v) arr.push_back(x.str());
        return arr;
    };
    j["a"] = strings(cfg.a());
    j["p"] = strings(cfg.p());
    return j;
}

DistanceConfig config_from_json(const nlohmann::json& j) {
    auto values = [&](const char* key) {
        std::vector<Rational> out;
        if (!j.contains(key) || !j.at(key).is_array()) throw ParseError(std::string("missing array '") + key + "'", 0);
        for (const auto& v : j.at(key)) {
            try {
                out.push_back(v.is_string() ? Rational::parse(v.get<std::string>())
                                            : Rational(v.get<std::int64_t>()));
            } catch (const nlohmann::json::exception& e) {
                throw ParseError(std::string("non-numeric entry in '") + key + "'", 0);
            } catch (const std::invalid_argument& e) {
                throw ParseError(e.what(), 0);
            }
        }
        return out;
    };
    DistanceConfig cfg(values("a"), values("p"));
    if (j.contains("k") && j.at("k") != cfg.k())
        throw ParseError("field 'k' disagrees with the number of pairs", 0);
    return cfg;
}

DistanceConfig parse_config_any(std::string_view text) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string_view::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("malformed JSON config", e.byte);
        }
        return config_from_json(j);
    }
    return parse_config(text);
}

}  // namespace kmr
