#include <charconv>
#include <fstream>
#include <sstream>

#include "ifaudit/io.hpp"

namespace ifaudit {

std::string format_double(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    if (ec != std::errc()) throw Error("failed to format a double");
    return std::string(buf, ptr);
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    for (char c : line) {
        if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else {
            field.push_back(c);
        }
    }
    fields.push_back(std::move(field));
    return fields;
}

// Strips a trailing '\r' so CRLF files parse; skips fully blank lines.
bool next_line(std::istream& in, std::string& line) {
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (!line.empty()) return true;
    }
    return false;
}

double parse_double_field(const std::string& s, const std::string& what) {
    double v{};
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size()) {
        throw CsvError("cannot parse " + what + " from \"" + s + "\"");
    }
    return v;
}

void require_plain_field(const std::string& s, const std::string& what) {
    if (s.find_first_of(",\r\n") != std::string::npos) {
        throw CsvError(what + " \"" + s + "\" contains a separator; fields are unquoted");
    }
}

std::string expected_population_header(std::size_t k) {
    std::string h = "id,group,uid";
    for (std::size_t i = 1; i <= k; ++i) h += ",f" + std::to_string(i);
    return h;
}

}  // namespace

Population read_population_csv(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw CsvError("empty population file");
    const std::vector<std::string> header = split_csv_line(line);
    if (header.size() < 3 || header[0] != "id" || header[1] != "group" || header[2] != "uid") {
        throw CsvError("population header must start with id,group,uid");
    }
    const std::size_t k = header.size() - 3;
    for (std::size_t i = 0; i < k; ++i) {
        if (header[3 + i] != "f" + std::to_string(i + 1)) {
            throw CsvError("population header must be " + expected_population_header(k));
        }
    }

    std::vector<Individual> people;
    while (next_line(in, line)) {
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != header.size()) {
            throw CsvError("row for id \"" + (fields.empty() ? "" : fields[0]) + "\" has " +
                           std::to_string(fields.size()) + " fields, expected " +
                           std::to_string(header.size()));
        }
        Individual ind;
        ind.id = fields[0];
        ind.group = fields[1];
        if (!fields[2].empty()) ind.uid = fields[2];
        ind.features.reserve(k);
        for (std::size_t i = 0; i < k; ++i) {
            ind.features.push_back(
                parse_double_field(fields[3 + i], "feature f" + std::to_string(i + 1)));
        }
        people.push_back(std::move(ind));
    }
    return Population(std::move(people), k);
}

Population read_population_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_population_csv(in);
}

void write_population_csv(const Population& pop, std::ostream& out) {
    out << expected_population_header(pop.feature_dim()) << '\n';
    for (const Individual& ind : pop.individuals()) {
        require_plain_field(ind.id, "id");
        require_plain_field(ind.group, "group");
        if (ind.uid) require_plain_field(*ind.uid, "uid");
        out << ind.id << ',' << ind.group << ',' << (ind.uid ? *ind.uid : "");
        for (double f : ind.features) out << ',' << format_double(f);
        out << '\n';
    }
}

std::string population_to_csv(const Population& pop) {
    std::ostringstream out;
    write_population_csv(pop, out);
    return out.str();
}

std::map<std::string, double> read_scores_csv(std::istream& in) {
    std::string line;
    if (!next_line(in, line)) throw CsvError("empty scores file");
    if (line != "id,score") throw CsvError("scores header must be id,score");

    std::map<std::string, double> scores;
    while (next_line(in, line)) {
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 2) {
            throw CsvError("scores row \"" + line + "\" must have exactly id,score");
        }
        if (fields[0].empty()) throw CsvError("scores row with empty id");
        if (!scores.emplace(fields[0], parse_double_field(fields[1], "score")).second) {
            throw CsvError("duplicate score for id \"" + fields[0] + "\"");
        }
    }
    return scores;
}

std::map<std::string, double> read_scores_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open '" + path + "'");
    return read_scores_csv(in);
}

void write_scores_csv(const std::map<std::string, double>& scores, std::ostream& out) {
    out << "id,score\n";
    for (const auto& [id, score] : scores) {
        require_plain_field(id, "id");
        out << id << ',' << format_double(score) << '\n';
    }
}

std::string scores_to_csv(const std::map<std::string, double>& scores) {
    std::ostringstream out;
    write_scores_csv(scores, out);
    return out.str();
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw Error("failed writing '" + path + "'");
}

}  // namespace ifaudit
