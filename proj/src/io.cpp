#include "zeno/io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace zeno::io {

namespace {

// JSON array of already-rendered items
std::string join(const std::vector<std::string>& items) {
    std::string out = "[";
    for (std::size_t k = 0; k < items.size(); ++k) {
        if (k) out += ',';
        out += items[k];
    }
    out += ']';
    return out;
}

std::string json_reals(const std::vector<double>& xs) {
    std::vector<std::string> items;
    items.reserve(xs.size());
    for (double x : xs) items.push_back(fmt(x));
    return join(items);
}

std::string json_string(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            default: out += c;
        }
    }
    out += '"';
    return out;
}

std::string json_strings(const std::vector<std::string>& xs) {
    std::vector<std::string> items;
    items.reserve(xs.size());
    for (const auto& s : xs) items.push_back(json_string(s));
    return join(items);
}

// Complex entries as [re, im] pairs, matrices as row-major nested arrays
std::string json_complex(num::Complex z) {
    return "[" + fmt(z.real()) + "," + fmt(z.imag()) + "]";
}

std::string json_matrix(const num::Matrix& M) {
    std::vector<std::string> rows;
    rows.reserve(static_cast<std::size_t>(M.rows()));
    for (num::Index i = 0; i < M.rows(); ++i) {
        std::vector<std::string> entries;
        entries.reserve(static_cast<std::size_t>(M.cols()));
        for (num::Index j = 0; j < M.cols(); ++j) entries.push_back(json_complex(M(i, j)));
        rows.push_back(join(entries));
    }
    return join(rows);
}

std::string json_column(const num::Matrix& M, num::Index j) {
    std::vector<std::string> entries;
    entries.reserve(static_cast<std::size_t>(M.rows()));
    for (num::Index i = 0; i < M.rows(); ++i) entries.push_back(json_complex(M(i, j)));
    return join(entries);
}

}  // namespace

std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.16e", x);
    return buf;
}

std::string fmt_complex(num::Complex z) {
    const std::string im = fmt(z.imag());
    return fmt(z.real()) + (im[0] == '-' ? "" : "+") + im + "i";
}

num::Complex parse_complex(const std::string& token) {
    if (token.size() < 2 || token.back() != 'i')
        throw IoError("parse_complex: token '" + token + "' does not end in 'i'");
    const std::string body = token.substr(0, token.size() - 1);
    // split at the last +/- that does not follow an exponent marker
    std::size_t split = std::string::npos;
    for (std::size_t p = 1; p < body.size(); ++p) {
        if ((body[p] == '+' || body[p] == '-') && body[p - 1] != 'e' && body[p - 1] != 'E')
            split = p;
    }
    if (split == std::string::npos)
        throw IoError("parse_complex: token '" + token + "' has no imaginary part");

    const std::string re_str = body.substr(0, split);
    const std::string im_str = body.substr(split);
    char* end = nullptr;
    const double re = std::strtod(re_str.c_str(), &end);
    if (end != re_str.c_str() + re_str.size())
        throw IoError("parse_complex: bad real part in '" + token + "'");
    const double im = std::strtod(im_str.c_str(), &end);
    if (end != im_str.c_str() + im_str.size())
        throw IoError("parse_complex: bad imaginary part in '" + token + "'");
    return {re, im};
}

num::Matrix read_operator_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path + "'");
    long long dim = 0;
    if (!(in >> dim) || dim < 1)
        throw IoError("'" + path + "': first token must be a positive dimension");
    num::Matrix M(dim, dim);
    for (long long i = 0; i < dim; ++i)
        for (long long j = 0; j < dim; ++j) {
            std::string token;
            if (!(in >> token))
                throw IoError("'" + path + "': expected " + std::to_string(dim * dim) +
                              " entries");
            M(i, j) = parse_complex(token);
        }
    return M;
}

void write_operator_file(const std::string& path, const num::Matrix& M) {
    if (M.rows() != M.cols()) throw IoError("write_operator_file: matrix must be square");
    std::ostringstream os;
    os << M.rows() << '\n';
    for (num::Index i = 0; i < M.rows(); ++i) {
        for (num::Index j = 0; j < M.cols(); ++j)
            os << (j ? " " : "") << fmt_complex(M(i, j));
        os << '\n';
    }
    write_text_file(path, os.str());
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << content;
    if (!out) throw IoError("write to '" + path + "' failed");
}

std::string trajectory_csv(const core::Trajectory& traj) {
    if (traj.survival.size() != traj.times.size())
        throw IoError("trajectory_csv: survival column missing");
    const std::size_t sectors =
        traj.sector_probs.empty() ? 0 : traj.sector_probs.front().size();
    std::string out = "t,survival,total_norm,coherence_norm";
    for (std::size_t n = 0; n < sectors; ++n) out += ",p_" + std::to_string(n);
    out += '\n';
    for (std::size_t k = 0; k < traj.times.size(); ++k) {
        out += fmt(traj.times[k]) + ',' + fmt(traj.survival[k]) + ',' +
               fmt(traj.total_norm[k]) + ',' + fmt(traj.coherence_norm[k]);
        for (std::size_t n = 0; n < sectors; ++n) out += ',' + fmt(traj.sector_probs[k][n]);
        out += '\n';
    }
    return out;
}

std::string trajectory_json(const core::Trajectory& traj, const models::DecayFit* fit) {
    const std::size_t sectors =
        traj.sector_probs.empty() ? 0 : traj.sector_probs.front().size();
    std::string out = "{\"t\":" + json_reals(traj.times);
    out += ",\"survival\":" + json_reals(traj.survival);
    out += ",\"total_norm\":" + json_reals(traj.total_norm);
    out += ",\"coherence_norm\":" + json_reals(traj.coherence_norm);
    for (std::size_t n = 0; n < sectors; ++n) {
        std::vector<double> col;
        col.reserve(traj.sector_probs.size());
        for (const auto& row : traj.sector_probs) col.push_back(row[n]);
        out += ",\"p_" + std::to_string(n) + "\":" + json_reals(col);
    }
    if (fit) {
        out += ",\"fit\":{\"gamma_eff\":" + fmt(fit->gamma_eff) +
               ",\"window\":[" + fmt(fit->t_start) + "," + fmt(fit->t_end) +
               "],\"residual\":" + fmt(fit->residual) + "}";
    }
    out += "}\n";
    return out;
}

std::string partition_csv(const core::ZenoPartition& part) {
    std::string out = "sector,eta,row,col,re,im\n";
    for (std::size_t n = 0; n < part.sectors(); ++n) {
        const num::Matrix& P = part.projectors[n];
        for (num::Index i = 0; i < P.rows(); ++i)
            for (num::Index j = 0; j < P.cols(); ++j)
                out += std::to_string(n) + ',' + fmt(part.eigenvalues[n]) + ',' +
                       std::to_string(i) + ',' + std::to_string(j) + ',' +
                       fmt(P(i, j).real()) + ',' + fmt(P(i, j).imag()) + '\n';
    }
    return out;
}

std::string partition_json(const core::ZenoPartition& part,
                           const std::vector<std::string>& basis_labels) {
    std::string out = "{\"eigenvalues\":" + json_reals(part.eigenvalues);
    std::vector<std::string> dims, projs;
    for (std::size_t n = 0; n < part.sectors(); ++n) {
        dims.push_back(std::to_string(part.sector_dim(n)));
        projs.push_back(json_matrix(part.projectors[n]));
    }
    out += ",\"sector_dims\":" + join(dims);
    out += ",\"projectors\":" + join(projs);
    if (!basis_labels.empty()) out += ",\"basis_labels\":" + json_strings(basis_labels);
    out += "}\n";
    return out;
}

std::string vectors_csv(const num::Matrix& columns) {
    std::string out = "vector,component,re,im\n";
    for (num::Index j = 0; j < columns.cols(); ++j)
        for (num::Index i = 0; i < columns.rows(); ++i)
            out += std::to_string(j) + ',' + std::to_string(i) + ',' +
                   fmt(columns(i, j).real()) + ',' + fmt(columns(i, j).imag()) + '\n';
    return out;
}

std::string vectors_json(const num::Matrix& columns,
                         const std::vector<std::string>& basis_labels) {
    std::vector<std::string> vecs;
    for (num::Index j = 0; j < columns.cols(); ++j) vecs.push_back(json_column(columns, j));
    std::string out = "{\"dimension\":" + std::to_string(columns.cols());
    out += ",\"vectors\":" + join(vecs);
    if (!basis_labels.empty()) out += ",\"basis_labels\":" + json_strings(basis_labels);
    out += "}\n";
    return out;
}

std::string report_csv(const core::ConvergenceReport& rep) {
    std::string out = "parameter,error\n";
    for (std::size_t k = 0; k < rep.parameter_values.size(); ++k)
        out += fmt(rep.parameter_values[k]) + ',' + fmt(rep.errors[k]) + '\n';
    return out;
}

std::string report_json(const core::ConvergenceReport& rep) {
    return "{\"parameter_name\":" + json_string(rep.parameter_name) +
           ",\"parameter_values\":" + json_reals(rep.parameter_values) +
           ",\"errors\":" + json_reals(rep.errors) +
           ",\"fitted_order\":" + fmt(rep.fitted_order) +
           ",\"fit_residual\":" + fmt(rep.fit_residual) + "}\n";
}

}  // namespace zeno::io
