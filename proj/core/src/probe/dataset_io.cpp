#include "caseval/probe/dataset_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "caseval/scdl/serialize.hpp"

namespace caseval::probe {

namespace {

Label label_from(std::string_view word, std::size_t line_no) {
    if (word == "scheming") return Label::scheming;
    if (word == "honest") return Label::honest;
    if (word == "unknown") return Label::unknown;
    throw std::runtime_error("dataset line " + std::to_string(line_no) +
                             ": unknown label '" + std::string(word) + "'");
}

}  // namespace

Dataset read_dataset(std::istream& in) {
    Dataset data;
    std::string line;
    std::size_t line_no = 0;
    std::size_t dimension = 0;

    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;

        const std::size_t bar = line.find('|');
        if (bar == std::string::npos) {
            throw std::runtime_error("dataset line " + std::to_string(line_no) +
                                     ": missing |label|category fields");
        }
        ActivationSample sample;

        std::string_view numbers(line.data(), bar);
        std::size_t pos = 0;
        while (pos < numbers.size()) {
            while (pos < numbers.size() && (numbers[pos] == ' ' || numbers[pos] == '\t')) {
                ++pos;
            }
            if (pos >= numbers.size()) break;
            std::size_t end = pos;
            while (end < numbers.size() && numbers[end] != ' ' && numbers[end] != '\t') {
                ++end;
            }
            double v = 0.0;
            const auto rc = std::from_chars(numbers.data() + pos,
                                            numbers.data() + end, v);
            if (rc.ec != std::errc{} || rc.ptr != numbers.data() + end) {
                throw std::runtime_error("dataset line " + std::to_string(line_no) +
                                         ": malformed number");
            }
            sample.vector.push_back(v);
            pos = end;
        }
        if (sample.vector.empty()) {
            throw std::runtime_error("dataset line " + std::to_string(line_no) +
                                     ": empty vector");
        }
        if (dimension == 0) {
            dimension = sample.vector.size();
        } else if (sample.vector.size() != dimension) {
            throw std::runtime_error("dataset line " + std::to_string(line_no) +
                                     ": dimension differs from earlier samples");
        }

        std::string_view tail(line.data() + bar + 1, line.size() - bar - 1);
        const std::size_t bar2 = tail.find('|');
        if (bar2 == std::string_view::npos) {
            throw std::runtime_error("dataset line " + std::to_string(line_no) +
                                     ": missing category field");
        }
        sample.label = label_from(tail.substr(0, bar2), line_no);
        sample.category = std::string(tail.substr(bar2 + 1));
        data.push_back(std::move(sample));
    }
    return data;
}

Dataset read_dataset_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open dataset file: " + path);
    return read_dataset(in);
}

void write_dataset(std::ostream& out, const Dataset& data) {
    for (const ActivationSample& s : data) {
        bool first = true;
        for (double v : s.vector) {
            if (!first) out << ' ';
            first = false;
            out << scdl::format_number(v);
        }
        out << " |" << to_string(s.label) << '|' << s.category << '\n';
    }
}

void write_dataset_file(const std::string& path, const Dataset& data) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open dataset file for writing: " + path);
    write_dataset(out, data);
}

}  // namespace caseval::probe
