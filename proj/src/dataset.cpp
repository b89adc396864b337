#include "ilsvm/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>
#include <optional>

#include <fmt/format.h>

#include "ilsvm/errors.hpp"
#include "ilsvm/rng.hpp"

namespace ilsvm {

namespace {

std::string_view trim(std::string_view s) {
    constexpr std::string_view ws = " \t\r\n";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::optional<double> to_double(std::string_view s) {
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    if (s.empty()) return std::nullopt;
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

std::optional<int> to_label(std::string_view s) {
    const auto v = to_double(s);
    if (!v) return std::nullopt;
    if (*v == 1.0) return 1;
    if (*v == -1.0 || *v == 0.0) return -1;
    return std::nullopt;
}

std::vector<std::string_view> split_lines(std::string_view text) {
    std::vector<std::string_view> lines;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = text.substr(pos, nl - pos);
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        lines.push_back(line);
        pos = nl + 1;
    }
    return lines;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> out;
    std::size_t pos = 0;
    while (true) {
        const auto p = s.find(sep, pos);
        out.push_back(s.substr(pos, p == std::string_view::npos ? std::string_view::npos : p - pos));
        if (p == std::string_view::npos) break;
        pos = p + 1;
    }
    return out;
}

}  // namespace

Dataset::Dataset(Eigen::MatrixXd features, Eigen::VectorXi labels)
    : features_(std::move(features)), labels_(std::move(labels)) {
    if (features_.rows() != labels_.size())
        throw DataError(fmt::format("dataset has {} feature rows but {} labels", features_.rows(),
                                    labels_.size()));
    if (features_.cols() < 1) throw DataError("dataset has no feature columns");
    for (Eigen::Index i = 0; i < labels_.size(); ++i)
        if (labels_(i) != 1 && labels_(i) != -1)
            throw DataError(fmt::format("sample {} has label {}, expected -1 or +1", i, labels_(i)));
    if (!features_.allFinite()) throw DataError("dataset contains NaN or infinite feature values");
    if (count(1) == 0 || count(-1) == 0)
        throw DataError("dataset must contain both classes; only one class present");
}

Dataset Dataset::subset(std::span<const Eigen::Index> indices) const {
    Eigen::MatrixXd x(static_cast<Eigen::Index>(indices.size()), n_features());
    Eigen::VectorXi y(static_cast<Eigen::Index>(indices.size()));
    for (std::size_t r = 0; r < indices.size(); ++r) {
        const auto row = static_cast<Eigen::Index>(r);
        x.row(row) = features_.row(indices[r]);
        y(row) = labels_(indices[r]);
    }
    return Dataset(std::move(x), std::move(y));
}

Dataset parse_libsvm(std::string_view text) {
    struct Row {
        int label;
        std::vector<std::pair<Eigen::Index, double>> entries;
    };
    std::vector<Row> rows;
    Eigen::Index max_index = 0;

    const auto lines = split_lines(text);
    for (std::size_t ln = 0; ln < lines.size(); ++ln) {
        const auto line = trim(lines[ln]);
        if (line.empty()) continue;
        const auto lineno = ln + 1;

        std::vector<std::string_view> tokens;
        for (auto tok : split(line, ' '))
            for (auto t : split(tok, '\t'))
                if (!t.empty()) tokens.push_back(t);

        const auto label = to_label(tokens.front());
        if (!label)
            throw DataError(fmt::format("line {}: label '{}' is not one of -1, 0, +1", lineno,
                                        tokens.front()));
        Row row{*label, {}};
        Eigen::Index last = 0;
        for (std::size_t t = 1; t < tokens.size(); ++t) {
            const auto colon = tokens[t].find(':');
            if (colon == std::string_view::npos)
                throw DataError(fmt::format("line {}: malformed feature '{}'", lineno, tokens[t]));
            const auto idx_text = tokens[t].substr(0, colon);
            long long idx = 0;
            const auto [p, ec] = std::from_chars(idx_text.data(), idx_text.data() + idx_text.size(), idx);
            if (ec != std::errc{} || p != idx_text.data() + idx_text.size() || idx < 1)
                throw DataError(fmt::format("line {}: bad feature index '{}'", lineno, idx_text));
            if (idx <= last)
                throw DataError(fmt::format("line {}: feature indices must be strictly increasing", lineno));
            const auto value = to_double(tokens[t].substr(colon + 1));
            if (!value || !std::isfinite(*value))
                throw DataError(fmt::format("line {}: bad feature value '{}'", lineno,
                                            tokens[t].substr(colon + 1)));
            last = idx;
            row.entries.emplace_back(idx - 1, *value);
        }
        max_index = std::max(max_index, last);
        rows.push_back(std::move(row));
    }

    if (rows.empty()) throw DataError("empty input: no samples");
    if (max_index == 0) throw DataError("no feature indices present in input");

    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows.size()), max_index);
    Eigen::VectorXi y(static_cast<Eigen::Index>(rows.size()));
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto i = static_cast<Eigen::Index>(r);
        y(i) = rows[r].label;
        for (const auto& [c, v] : rows[r].entries) x(i, c) = v;
    }
    return Dataset(std::move(x), std::move(y));
}

Dataset parse_csv(std::string_view text, std::string_view label_column) {
    const auto lines = split_lines(text);
    if (lines.empty() || trim(lines.front()).empty()) throw DataError("missing CSV header row");

    std::vector<std::string> header;
    for (auto h : split(lines.front(), ',')) header.emplace_back(trim(h));

    const auto label_it = std::find(header.begin(), header.end(), label_column);
    if (label_it == header.end())
        throw DataError(fmt::format("unknown label column '{}'", label_column));
    const auto label_col = static_cast<std::size_t>(label_it - header.begin());

    std::vector<std::vector<double>> feats;
    std::vector<int> labels;
    for (std::size_t ln = 1; ln < lines.size(); ++ln) {
        if (trim(lines[ln]).empty()) continue;
        const auto rowno = ln + 1;
        const auto cells = split(lines[ln], ',');
        if (cells.size() != header.size())
            throw DataError(fmt::format("row {}: expected {} cells, found {}", rowno, header.size(),
                                        cells.size()));
        std::vector<double> f;
        f.reserve(header.size() - 1);
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const auto cell = trim(cells[c]);
            if (c == label_col) {
                const auto label = to_label(cell);
                if (!label)
                    throw DataError(fmt::format("row {}, column {}: label '{}' is not one of -1, 0, +1",
                                                rowno, header[c], cell));
                labels.push_back(*label);
                continue;
            }
            const auto v = to_double(cell);
            if (!v || !std::isfinite(*v))
                throw DataError(fmt::format("row {}, column {}: non-numeric cell '{}'", rowno,
                                            header[c], cell));
            f.push_back(*v);
        }
        feats.push_back(std::move(f));
    }
    if (feats.empty()) throw DataError("empty input: no samples");

    const auto n = static_cast<Eigen::Index>(feats.size());
    const auto dim = static_cast<Eigen::Index>(header.size() - 1);
    Eigen::MatrixXd x(n, dim);
    Eigen::VectorXi y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        x.row(i) = Eigen::Map<const Eigen::RowVectorXd>(feats[static_cast<std::size_t>(i)].data(), dim);
        y(i) = labels[static_cast<std::size_t>(i)];
    }
    return Dataset(std::move(x), std::move(y));
}

std::string to_libsvm(const Dataset& d) {
    std::string out;
    const auto last = d.n_features() - 1;
    for (Eigen::Index i = 0; i < d.size(); ++i) {
        out += d.label(i) > 0 ? "+1" : "-1";
        for (Eigen::Index c = 0; c < d.n_features(); ++c) {
            const double v = d.features()(i, c);
            if (v != 0.0 || c == last) out += fmt::format(" {}:{:.17g}", c + 1, v);
        }
        out += '\n';
    }
    return out;
}

Dataset Standardization::apply(const Dataset& d) const {
    Eigen::MatrixXd x = (d.features().rowwise() - mean.transpose()).array().rowwise() /
                        scale.transpose().array();
    return Dataset(std::move(x), d.labels());
}

StandardizeResult standardize(const Dataset& d) {
    const auto& x = d.features();
    const double n = static_cast<double>(x.rows());
    Standardization s;
    s.mean = x.colwise().mean().transpose();
    s.stddev = ((x.rowwise() - s.mean.transpose()).array().square().colwise().sum() / n)
                   .sqrt()
                   .transpose();
    s.scale = s.stddev;
    for (Eigen::Index c = 0; c < s.scale.size(); ++c)
        if (s.stddev(c) <= 1e-12 * std::max(1.0, std::abs(s.mean(c)))) s.scale(c) = 1.0;
    auto data = s.apply(d);
    return {std::move(data), std::move(s)};
}

std::vector<Eigen::Index> FoldAssignment::test_indices(int fold) const {
    std::vector<Eigen::Index> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i)
        if (fold_of[i] == fold) out.push_back(static_cast<Eigen::Index>(i));
    return out;
}

std::vector<Eigen::Index> FoldAssignment::train_indices(int fold) const {
    std::vector<Eigen::Index> out;
    for (std::size_t i = 0; i < fold_of.size(); ++i)
        if (fold_of[i] != fold) out.push_back(static_cast<Eigen::Index>(i));
    return out;
}

std::vector<Eigen::Index> FoldAssignment::fold_sizes() const {
    std::vector<Eigen::Index> sizes(static_cast<std::size_t>(k), 0);
    for (int f : fold_of) ++sizes[static_cast<std::size_t>(f)];
    return sizes;
}

FoldAssignment kfold_split(const Dataset& d, int k, std::uint64_t seed) {
    if (k < 2) throw DataError(fmt::format("k = {} folds; need at least 2", k));
    const auto smaller = std::min(d.count(-1), d.count(1));
    if (k > smaller)
        throw DataError(fmt::format("k = {} exceeds the smaller class count {}", k, smaller));

    Rng rng(seed, kFoldStream);
    FoldAssignment folds{k, std::vector<int>(static_cast<std::size_t>(d.size()), -1)};
    int next = 0;
    for (int cls : {-1, 1}) {
        std::vector<Eigen::Index> members;
        for (Eigen::Index i = 0; i < d.size(); ++i)
            if (d.label(i) == cls) members.push_back(i);
        for (std::size_t i = members.size(); i > 1; --i)
            std::swap(members[i - 1], members[rng.below(i)]);
        for (auto idx : members) {
            folds.fold_of[static_cast<std::size_t>(idx)] = next;
            next = (next + 1) % k;
        }
    }
    return folds;
}

}  // namespace ilsvm
