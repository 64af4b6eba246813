#include "rotclus/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>
#include <string_view>

#include "rotclus/error.hpp"

namespace rotclus {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    return s;
}

bool parse_double(std::string_view cell, double& out) {
    cell = trim(cell);
    if (cell.empty())
        return false;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, out);
    return ec == std::errc{} && ptr == last;
}

std::vector<std::string_view> split_cells(std::string_view line) {
    std::vector<std::string_view> cells;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            cells.push_back(line.substr(start));
            break;
        }
        cells.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return cells;
}

void format_value(std::string& out, double v) {
    char buf[40];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                                   std::chars_format::general, 17);
    out.append(buf, ptr);
}

} // namespace

Dataset::Dataset(Eigen::MatrixXd values, std::vector<std::string> attribute_names)
    : values_(std::move(values)), attribute_names_(std::move(attribute_names)) {
    if (values_.rows() < 1 || values_.cols() < 1)
        throw Error(ErrorKind::precondition, "dataset must have at least one attribute and one record");
    if (!attribute_names_.empty() &&
        static_cast<Eigen::Index>(attribute_names_.size()) != values_.rows())
        throw Error(ErrorKind::precondition, "attribute name count does not match attribute count");
}

Dataset load_csv(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw Error(ErrorKind::io, "cannot open " + path.string() + " for reading");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    if (in.bad())
        throw Error(ErrorKind::io, "failed reading " + path.string());
    const std::string text = buffer.str();

    std::vector<std::string> names;
    std::vector<double> row_major;
    Eigen::Index columns = -1;
    Eigen::Index rows = 0;
    std::size_t line_start = 0;
    long long line_number = 0;
    bool first_content_line = true;

    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string::npos)
            line_end = text.size();
        std::string_view line(text.data() + line_start, line_end - line_start);
        line_start = line_end + 1;
        ++line_number;
        if (trim(line).empty()) {
            if (line_start > text.size())
                break;
            continue;
        }

        auto cells = split_cells(line);
        if (first_content_line) {
            first_content_line = false;
            bool all_numeric = true;
            double v;
            for (auto cell : cells)
                all_numeric = all_numeric && parse_double(cell, v);
            if (!all_numeric) {
                // Single header row of attribute labels.
                names.reserve(cells.size());
                for (auto cell : cells)
                    names.emplace_back(trim(cell));
                columns = static_cast<Eigen::Index>(cells.size());
                continue;
            }
        }

        if (columns < 0)
            columns = static_cast<Eigen::Index>(cells.size());
        else if (static_cast<Eigen::Index>(cells.size()) != columns)
            throw Error(ErrorKind::io,
                        path.string() + ": row " + std::to_string(line_number) + " has " +
                            std::to_string(cells.size()) + " cells, expected " +
                            std::to_string(columns));

        for (std::size_t c = 0; c < cells.size(); ++c) {
            double v;
            if (!parse_double(cells[c], v))
                throw Error(ErrorKind::io,
                            path.string() + ": row " + std::to_string(line_number) +
                                ", column " + std::to_string(c + 1) + ": cell '" +
                                std::string(trim(cells[c])) + "' is not numeric");
            if (!std::isfinite(v))
                throw Error(ErrorKind::io,
                            path.string() + ": row " + std::to_string(line_number) +
                                ", column " + std::to_string(c + 1) + ": value is not finite");
            row_major.push_back(v);
        }
        ++rows;
    }

    if (rows == 0 || columns <= 0)
        throw Error(ErrorKind::io, path.string() + ": no data rows found");

    // Records as rows on disk become records as columns in memory.
    Eigen::MatrixXd values(columns, rows);
    for (Eigen::Index r = 0; r < rows; ++r)
        for (Eigen::Index c = 0; c < columns; ++c)
            values(c, r) = row_major[static_cast<std::size_t>(r) * columns + c];
    return Dataset(std::move(values), std::move(names));
}

void save_csv(const Dataset& d, const std::filesystem::path& path) {
    std::string out;
    out.reserve(static_cast<std::size_t>(d.records()) * static_cast<std::size_t>(d.attributes()) * 20);

    if (!d.attribute_names().empty()) {
        for (Eigen::Index a = 0; a < d.attributes(); ++a) {
            if (a > 0)
                out.push_back(',');
            out += d.attribute_names()[static_cast<std::size_t>(a)];
        }
        out.push_back('\n');
    }
    for (Eigen::Index r = 0; r < d.records(); ++r) {
        for (Eigen::Index a = 0; a < d.attributes(); ++a) {
            if (a > 0)
                out.push_back(',');
            format_value(out, d.values()(a, r));
        }
        out.push_back('\n');
    }

    std::ofstream file(path, std::ios::binary | std::ios::trunc);
    if (!file)
        throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
    file.write(out.data(), static_cast<std::streamsize>(out.size()));
    if (!file)
        throw Error(ErrorKind::io, "failed writing " + path.string());
}

NormalizationSpec fit_normalizer(const Dataset& d, NormMethod method) {
    NormalizationSpec spec;
    spec.method = method;
    const Eigen::Index a = d.attributes();
    spec.stat_a.resize(a);
    spec.stat_b.resize(a);

    switch (method) {
    case NormMethod::min_max:
        spec.stat_a = d.values().rowwise().minCoeff();
        spec.stat_b = d.values().rowwise().maxCoeff();
        break;
    case NormMethod::z_score:
        spec.stat_a = d.values().rowwise().mean();
        for (Eigen::Index i = 0; i < a; ++i) {
            const double mean = spec.stat_a(i);
            // Population standard deviation (divide by n).
            const double var = (d.values().row(i).array() - mean).square().mean();
            spec.stat_b(i) = std::sqrt(var);
        }
        break;
    case NormMethod::unary_max:
        spec.stat_a = d.values().array().abs().rowwise().maxCoeff();
        spec.stat_b.setZero();
        break;
    }
    return spec;
}

Dataset apply_normalizer(const NormalizationSpec& spec, const Dataset& d) {
    if (spec.attributes() != d.attributes())
        throw Error(ErrorKind::precondition,
                    "normalizer was fitted for " + std::to_string(spec.attributes()) +
                        " attributes but the dataset has " + std::to_string(d.attributes()));

    Eigen::MatrixXd out(d.attributes(), d.records());
    for (Eigen::Index i = 0; i < d.attributes(); ++i) {
        const auto row = d.values().row(i).array();
        switch (spec.method) {
        case NormMethod::min_max: {
            const double range = spec.stat_b(i) - spec.stat_a(i);
            // Constant attributes map to 0 rather than erroring.
            if (range == 0.0)
                out.row(i).setZero();
            else
                out.row(i) = (row - spec.stat_a(i)) / range;
            break;
        }
        case NormMethod::z_score: {
            if (spec.stat_b(i) == 0.0)
                out.row(i).setZero();
            else
                out.row(i) = (row - spec.stat_a(i)) / spec.stat_b(i);
            break;
        }
        case NormMethod::unary_max: {
            if (spec.stat_a(i) == 0.0)
                out.row(i).setZero();
            else
                out.row(i) = row / spec.stat_a(i);
            break;
        }
        }
    }
    return Dataset(std::move(out), d.attribute_names());
}

PartitionedDataset partition(const Dataset& d, int m) {
    if (m < 1)
        throw Error(ErrorKind::precondition, "partition count must be positive");
    const Eigen::Index n = d.records();
    const Eigen::Index a = d.attributes();
    const Eigen::Index c = n / m;
    if (c <= a)
        throw Error(ErrorKind::precondition,
                    "partition requires more records per block than attributes (c > a): "
                    "n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                        " gives c=" + std::to_string(c) + " with a=" + std::to_string(a));

    PartitionedDataset parts;
    parts.blocks.reserve(static_cast<std::size_t>(m));
    Eigen::Index offset = 0;
    for (int b = 0; b < m; ++b) {
        const Eigen::Index width = (b == m - 1) ? n - offset : c;
        parts.blocks.emplace_back(d.values().middleCols(offset, width));
        offset += width;
    }
    return parts;
}

Dataset pad_to_even(const Dataset& d) {
    if (d.attributes() % 2 == 0)
        return d;
    Eigen::MatrixXd padded(d.attributes() + 1, d.records());
    padded.topRows(d.attributes()) = d.values();
    padded.row(d.attributes()).setZero();
    std::vector<std::string> names = d.attribute_names();
    if (!names.empty())
        names.emplace_back("pad");
    return Dataset(std::move(padded), std::move(names));
}

Dataset gen_synthetic(Eigen::Index records, Eigen::Index attributes, double mu,
                      double sigma_sq, Seed seed) {
    if (records < 1 || attributes < 1)
        throw Error(ErrorKind::precondition, "record and attribute counts must be positive");
    if (!(sigma_sq > 0.0))
        throw Error(ErrorKind::precondition, "variance must be positive");

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(mu, std::sqrt(sigma_sq));
    Eigen::MatrixXd values(attributes, records);
    for (Eigen::Index r = 0; r < records; ++r)
        for (Eigen::Index a = 0; a < attributes; ++a)
            values(a, r) = dist(rng);
    return Dataset(std::move(values));
}

BlobData gen_blobs(Eigen::Index records, Eigen::Index attributes, int k,
                   double stddev, Seed seed) {
    if (records < 1 || attributes < 1)
        throw Error(ErrorKind::precondition, "record and attribute counts must be positive");
    if (k < 1 || k > records)
        throw Error(ErrorKind::precondition, "blob count must be in [1, records]");
    if (!(stddev > 0.0))
        throw Error(ErrorKind::precondition, "blob stddev must be positive");

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> box(0.0, 100.0);
    std::normal_distribution<double> noise(0.0, stddev);

    const double min_sep = 25.0;
    Eigen::MatrixXd centers(attributes, k);
    int placed = 0;
    for (int attempt = 0; placed < k && attempt < 100000; ++attempt) {
        Eigen::VectorXd candidate(attributes);
        for (Eigen::Index a = 0; a < attributes; ++a)
            candidate(a) = box(rng);
        bool ok = true;
        for (int c = 0; c < placed && ok; ++c)
            ok = (centers.col(c) - candidate).norm() >= min_sep;
        if (ok)
            centers.col(placed++) = candidate;
    }
    if (placed < k)
        throw Error(ErrorKind::precondition,
                    "could not place " + std::to_string(k) + " blob centers with separation " +
                        std::to_string(min_sep) + " in [0,100]^" + std::to_string(attributes));

    BlobData blobs;
    blobs.centers = centers;
    blobs.labels.resize(static_cast<std::size_t>(records));
    Eigen::MatrixXd values(attributes, records);
    for (Eigen::Index r = 0; r < records; ++r) {
        const int label = static_cast<int>(r % k);
        blobs.labels[static_cast<std::size_t>(r)] = label;
        for (Eigen::Index a = 0; a < attributes; ++a)
            values(a, r) = centers(a, label) + noise(rng);
    }
    blobs.data = Dataset(std::move(values));
    return blobs;
}

} // namespace rotclus
