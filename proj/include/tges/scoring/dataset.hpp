#pragma once

#include <Eigen/Dense>
#include <istream>
#include <sstream>
#include <string>
#include <vector>

#include "tges/error.hpp"
#include "tges/io/csv.hpp"

namespace tges {

/// Observations of d continuous variables plus their sufficient statistics.
///
/// The covariance is the maximum-likelihood estimate (divides by n). Samples
/// are kept when the dataset was built from raw data so it can be written back
/// out; a dataset restored from a statistics sidecar has no samples.
class Dataset {
public:
    Dataset() = default;

    /// Rows are observations, columns are variables.
    static Dataset from_samples(Eigen::MatrixXd samples, std::vector<std::string> labels) {
        if (samples.rows() < 1) throw Error("dataset needs at least one observation");
        if (static_cast<std::size_t>(samples.cols()) != labels.size()) {
            throw Error("dataset has " + std::to_string(samples.cols()) + " columns but " +
                        std::to_string(labels.size()) + " labels");
        }
        Dataset ds;
        ds.n_ = static_cast<std::size_t>(samples.rows());
        ds.mean_ = samples.colwise().mean().transpose();
        const Eigen::MatrixXd centered = samples.rowwise() - ds.mean_.transpose();
        ds.cov_ = (centered.transpose() * centered) / static_cast<double>(ds.n_);
        ds.labels_ = std::move(labels);
        ds.samples_ = std::move(samples);
        return ds;
    }

    static Dataset from_statistics(std::size_t n, Eigen::VectorXd mean, Eigen::MatrixXd cov,
                                   std::vector<std::string> labels) {
        const auto d = static_cast<Eigen::Index>(labels.size());
        if (n < 1) throw Error("sufficient statistics need n >= 1");
        if (mean.size() != d || cov.rows() != d || cov.cols() != d) {
            throw Error("sufficient statistics have inconsistent dimensions");
        }
        if (!cov.isApprox(cov.transpose(), 1e-12)) throw Error("covariance is not symmetric");
        Dataset ds;
        ds.n_ = n;
        ds.mean_ = std::move(mean);
        ds.cov_ = std::move(cov);
        ds.labels_ = std::move(labels);
        return ds;
    }

    std::size_t n() const noexcept { return n_; }
    std::size_t d() const noexcept { return labels_.size(); }
    const Eigen::MatrixXd& covariance() const noexcept { return cov_; }
    const Eigen::VectorXd& mean() const noexcept { return mean_; }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    bool has_samples() const noexcept { return samples_.size() > 0; }
    const Eigen::MatrixXd& samples() const noexcept { return samples_; }

private:
    std::size_t n_ = 0;
    Eigen::VectorXd mean_;
    Eigen::MatrixXd cov_;
    std::vector<std::string> labels_;
    Eigen::MatrixXd samples_;
};

namespace io {

/// Header of variable names, then one observation per row.
inline Dataset read_dataset_csv(std::istream& in, const std::string& source = "<data>") {
    const std::vector<CsvRow> rows = read_csv(in, source);
    if (rows.empty()) throw ParseError(source, 1, 0, "missing header row");
    std::vector<std::string> labels = rows[0].fields;
    for (std::size_t j = 0; j < labels.size(); ++j) {
        if (labels[j].empty()) throw ParseError(source, rows[0].line, rows[0].columns[j], "empty variable name");
        for (std::size_t i = 0; i < j; ++i) {
            if (labels[i] == labels[j]) {
                throw ParseError(source, rows[0].line, rows[0].columns[j], "duplicate variable '" + labels[j] + "'");
            }
        }
    }
    if (rows.size() < 2) throw ParseError(source, rows[0].line, 0, "no observations");
    const auto d = static_cast<Eigen::Index>(labels.size());
    Eigen::MatrixXd samples(static_cast<Eigen::Index>(rows.size() - 1), d);
    for (std::size_t r = 1; r < rows.size(); ++r) {
        const CsvRow& row = rows[r];
        if (row.fields.size() != labels.size()) {
            throw ParseError(source, row.line, 0,
                             "expected " + std::to_string(labels.size()) + " fields, found " +
                                 std::to_string(row.fields.size()));
        }
        for (Eigen::Index j = 0; j < d; ++j) {
            const auto uj = static_cast<std::size_t>(j);
            samples(static_cast<Eigen::Index>(r - 1), j) = parse_double(row.fields[uj], source, row.line, row.columns[uj]);
        }
    }
    return Dataset::from_samples(std::move(samples), std::move(labels));
}

inline std::string write_dataset_csv(const Dataset& ds) {
    if (!ds.has_samples()) throw Error("dataset has no samples to write");
    std::string out;
    for (std::size_t j = 0; j < ds.d(); ++j) {
        if (j) out += ',';
        out += ds.labels()[j];
    }
    out += '\n';
    const Eigen::MatrixXd& x = ds.samples();
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            if (j) out += ',';
            out += format_double(x(i, j));
        }
        out += '\n';
    }
    return out;
}

/// Sidecar with n, means and covariance:
///   stat,<labels...>
///   n,<n>
///   mean,<means...>
///   <label_i>,<cov row i...>
inline std::string write_statistics_csv(const Dataset& ds) {
    std::ostringstream out;
    out << "stat";
    for (const auto& l : ds.labels()) out << ',' << l;
    out << "\nn," << ds.n() << "\nmean";
    for (Eigen::Index j = 0; j < ds.mean().size(); ++j) out << ',' << format_double(ds.mean()(j));
    out << '\n';
    for (std::size_t i = 0; i < ds.d(); ++i) {
        out << ds.labels()[i];
        for (std::size_t j = 0; j < ds.d(); ++j) {
            out << ',' << format_double(ds.covariance()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)));
        }
        out << '\n';
    }
    return out.str();
}

inline Dataset read_statistics_csv(std::istream& in, const std::string& source = "<statistics>") {
    const std::vector<CsvRow> rows = read_csv(in, source);
    if (rows.empty() || rows[0].fields.empty() || rows[0].fields[0] != "stat") {
        throw ParseError(source, 1, 1, "expected header starting with 'stat'");
    }
    std::vector<std::string> labels(rows[0].fields.begin() + 1, rows[0].fields.end());
    const std::size_t d = labels.size();
    if (rows.size() != d + 3) throw ParseError(source, rows.back().line, 0, "expected n, mean and covariance rows");
    if (rows[1].fields.size() < 2 || rows[1].fields[0] != "n") throw ParseError(source, rows[1].line, 1, "expected 'n' row");
    const long n = parse_int(rows[1].fields[1], source, rows[1].line, rows[1].columns[1]);
    if (n < 1) throw ParseError(source, rows[1].line, rows[1].columns[1], "n must be positive");
    auto numeric_row = [&](const CsvRow& row, const std::string& name) {
        if (row.fields.size() != d + 1 || row.fields[0] != name) {
            throw ParseError(source, row.line, 1, "expected row '" + name + "' with " + std::to_string(d) + " values");
        }
        Eigen::VectorXd v(static_cast<Eigen::Index>(d));
        for (std::size_t j = 0; j < d; ++j) {
            v(static_cast<Eigen::Index>(j)) = parse_double(row.fields[j + 1], source, row.line, row.columns[j + 1]);
        }
        return v;
    };
    Eigen::VectorXd mean = numeric_row(rows[2], "mean");
    Eigen::MatrixXd cov(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) cov.row(static_cast<Eigen::Index>(i)) = numeric_row(rows[3 + i], labels[i]).transpose();
    return Dataset::from_statistics(static_cast<std::size_t>(n), std::move(mean), std::move(cov), std::move(labels));
}

}  // namespace io
}  // namespace tges
