#include "rotclus/transform.hpp"

#include <cstdio>
#include <fstream>
#include <numeric>
#include <sstream>

#include "rotclus/error.hpp"

namespace rotclus {

TransformedDataset::TransformedDataset(Eigen::MatrixXd values, std::vector<Eigen::Index> widths,
                                       std::vector<int> subset_indices)
    : values_(std::move(values)), widths_(std::move(widths)), subsets_(std::move(subset_indices)) {
    if (widths_.empty() || widths_.size() != subsets_.size())
        throw Error(ErrorKind::precondition, "transformed dataset needs matching block metadata");
    offsets_.resize(widths_.size());
    Eigen::Index offset = 0;
    for (std::size_t b = 0; b < widths_.size(); ++b) {
        offsets_[b] = offset;
        offset += widths_[b];
    }
    if (offset != values_.cols())
        throw Error(ErrorKind::precondition, "block widths do not sum to the record count");
}

namespace {

void require_even_attributes(const Dataset& d) {
    if (d.attributes() % 2 != 0)
        throw Error(ErrorKind::precondition,
                    "attribute count " + std::to_string(d.attributes()) +
                        " is odd; apply pad_to_even before transforming");
}

// Applying the block-diagonal rotation is a 2x2 rotation of each attribute
// pair, streamed column by column. Both storage sides are column-major, so
// this touches memory once and carries no per-block matrix setup.
void rotate_columns(const Eigen::MatrixXd& in, Eigen::Index in_col0, Eigen::MatrixXd& out,
                    Eigen::Index out_col0, Eigen::Index width, Angle theta) {
#if defined(__GLIBC__)
    double c, s;
    ::sincos(theta.radians(), &s, &c);
#else
    const double c = std::cos(theta.radians());
    const double s = std::sin(theta.radians());
#endif
    const Eigen::Index a = in.rows();
    const double* src = in.data() + in_col0 * a;
    double* dst = out.data() + out_col0 * a;
    for (Eigen::Index j = 0; j < width; ++j) {
        const double* x = src + j * a;
        double* y = dst + j * a;
        for (Eigen::Index r = 0; r < a; r += 2) {
            const double u = x[r];
            const double v = x[r + 1];
            y[r] = c * u + s * v;
            y[r + 1] = c * v - s * u;
        }
    }
}

} // namespace

// Rotates contiguous column ranges of d, one rotation per block, writing
// straight into out and reusing its storage when the shape is unchanged.
void rotate_blocks_into(const Dataset& d, const std::vector<Angle>& angles,
                        const std::vector<Eigen::Index>& widths, TransformedDataset& out) {
    if (out.values_.rows() != d.attributes() || out.values_.cols() != d.records())
        out.values_.resize(d.attributes(), d.records());
    out.widths_ = widths;
    out.offsets_.resize(widths.size());
    out.subsets_.resize(widths.size());
    Eigen::Index offset = 0;
    for (std::size_t b = 0; b < widths.size(); ++b) {
        out.offsets_[b] = offset;
        out.subsets_[b] = static_cast<int>(b) + 1;
        rotate_columns(d.values(), offset, out.values_, offset, widths[b], angles[b]);
        offset += widths[b];
    }
}

TransformedDataset rbt(const Dataset& d, Seed seed) {
    TransformedDataset out;
    rbt_into(d, seed, out);
    return out;
}

void rbt_into(const Dataset& d, Seed seed, TransformedDataset& out) {
    require_even_attributes(d);
    rotate_blocks_into(d, {seed_to_angle(seed)}, {d.records()}, out);
}

MrbtResult mrbt(const Dataset& d, int m, std::span<const Seed> seeds) {
    MrbtResult result;
    mrbt_into(d, m, seeds, result);
    return result;
}

void mrbt_into(const Dataset& d, int m, std::span<const Seed> seeds, MrbtResult& out) {
    require_even_attributes(d);
    if (m < 1)
        throw Error(ErrorKind::precondition, "subset count must be positive");
    if (static_cast<int>(seeds.size()) != m)
        throw Error(ErrorKind::precondition,
                    "expected " + std::to_string(m) + " seeds, got " + std::to_string(seeds.size()));

    const Eigen::Index n = d.records();
    const Eigen::Index a = d.attributes();
    const Eigen::Index c = n / m;
    if (c <= a)
        throw Error(ErrorKind::precondition,
                    "partition requires more records per block than attributes (c > a): "
                    "n=" + std::to_string(n) + ", m=" + std::to_string(m) +
                        " gives c=" + std::to_string(c) + " with a=" + std::to_string(a));

    out.secrets.seeds.assign(seeds.begin(), seeds.end());
    out.secrets.angles.clear();
    out.secrets.angles.reserve(seeds.size());
    for (Seed s : seeds)
        out.secrets.angles.push_back(seed_to_angle(s));

    std::vector<Eigen::Index> widths(static_cast<std::size_t>(m), c);
    widths.back() = n - c * (m - 1);
    rotate_blocks_into(d, out.secrets.angles, widths, out.transformed);
}

Eigen::MatrixXd inner_product_blocks(const TransformedDataset& ya, const TransformedDataset& yb) {
    if (ya.dim() != yb.dim() || ya.block_count() != yb.block_count())
        throw Error(ErrorKind::precondition, "transformed datasets have different block structure");
    for (int b = 1; b <= ya.block_count(); ++b)
        if (ya.block_width(b) != yb.block_width(b))
            throw Error(ErrorKind::precondition,
                        "block " + std::to_string(b) + " widths differ: " +
                            std::to_string(ya.block_width(b)) + " vs " +
                            std::to_string(yb.block_width(b)));
    return ya.values().transpose() * yb.values();
}

ReleaseOutcome arbt_client_release(const ClientSecrets& secrets, int i, int j,
                                   ReleaseLedger& ledger) {
    if (ledger.m() != secrets.m())
        throw Error(ErrorKind::precondition,
                    "ledger tracks " + std::to_string(ledger.m()) + " subsets but secrets hold " +
                        std::to_string(secrets.m()));

    ReleaseCheck check = ledger.can_release(i, j); // also validates the indices
    if (!check.allowed)
        return ReleaseOutcome{false, Angle(), check.reason};

    const Angle theta = unification_angle(secrets.angles[static_cast<std::size_t>(i - 1)],
                                          secrets.angles[static_cast<std::size_t>(j - 1)]);
    ledger.record_release(i, j, theta);
    return ReleaseOutcome{true, theta, ""};
}

void rotate_block_into(const TransformedDataset& y, int block, Angle theta,
                       Eigen::MatrixXd& out) {
    if (block < 1 || block > y.block_count())
        throw Error(ErrorKind::precondition,
                    "block index " + std::to_string(block) + " is outside [1, " +
                        std::to_string(y.block_count()) + "]");
    Eigen::Index offset = 0;
    for (int b = 1; b < block; ++b)
        offset += y.block_width(b);
    const Eigen::Index width = y.block_width(block);
    if (out.rows() != y.dim() || out.cols() < width)
        out.resize(y.dim(), width);
    rotate_columns(y.values(), offset, out, 0, width, theta);
}

UnifiedPair server_unify(const TransformedDataset& y, int i, int j, Angle theta_ij) {
    const int m = y.block_count();
    if (i < 1 || i > m || j < 1 || j > m)
        throw Error(ErrorKind::precondition,
                    "subset indices must lie in [1, " + std::to_string(m) + "], got (" +
                        std::to_string(i) + ", " + std::to_string(j) + ")");
    if (i == j)
        throw Error(ErrorKind::precondition, "cannot unify a subset with itself");

    UnifiedPair pair;
    pair.subset_i = i;
    pair.subset_j = j;
    pair.width_i = y.block_width(i);
    pair.width_j = y.block_width(j);

    Eigen::MatrixXd merged(y.dim(), pair.width_i + pair.width_j);
    rotate_block_into(y, i, theta_ij, merged);
    merged.rightCols(pair.width_j) = y.block(j);
    pair.merged = Dataset(std::move(merged));
    return pair;
}

RefreshResult refresh_parameters(const Dataset& d, const ClientSecrets& old_secrets,
                                 Seed master_seed) {
    const int m = old_secrets.m();
    const std::vector<Seed> seeds = derive_seeds(master_seed, static_cast<std::size_t>(m));
    MrbtResult fresh = mrbt(d, m, seeds);
    return RefreshResult{std::move(fresh.transformed), std::move(fresh.secrets), ReleaseLedger(m)};
}

namespace {

std::string block_file_name(int block) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "block_%03d.csv", block);
    return buf;
}

} // namespace

void save_transformed(const TransformedDataset& t, const std::filesystem::path& directory) {
    std::error_code ec;
    std::filesystem::create_directories(directory, ec);
    if (ec)
        throw Error(ErrorKind::io, "cannot create directory " + directory.string() + ": " + ec.message());

    std::ofstream manifest(directory / "manifest.txt", std::ios::trunc);
    if (!manifest)
        throw Error(ErrorKind::io, "cannot open " + (directory / "manifest.txt").string() + " for writing");
    manifest << "rotclus-transformed-v1\n";
    manifest << "m " << t.block_count() << "\n";
    manifest << "dim " << t.dim() << "\n";
    for (int b = 1; b <= t.block_count(); ++b) {
        const std::string file = block_file_name(b);
        manifest << "block " << t.subset_index(b) << " records " << t.block_width(b)
                 << " file " << file << "\n";
        save_csv(Dataset(t.block(b)), directory / file);
    }
    if (!manifest)
        throw Error(ErrorKind::io, "failed writing manifest in " + directory.string());
}

TransformedDataset load_transformed(const std::filesystem::path& directory) {
    const std::filesystem::path manifest_path = directory / "manifest.txt";
    std::ifstream manifest(manifest_path);
    if (!manifest)
        throw Error(ErrorKind::io, "cannot open " + manifest_path.string() + " for reading");

    std::string line;
    if (!std::getline(manifest, line) || line != "rotclus-transformed-v1")
        throw Error(ErrorKind::io, manifest_path.string() + ": unrecognized manifest format");

    std::string key;
    int m = 0;
    Eigen::Index dim = 0;
    if (!(manifest >> key >> m) || key != "m" || m < 1)
        throw Error(ErrorKind::io, manifest_path.string() + ": malformed subset count");
    if (!(manifest >> key >> dim) || key != "dim" || dim < 1)
        throw Error(ErrorKind::io, manifest_path.string() + ": malformed dimension");

    std::vector<Eigen::Index> widths;
    std::vector<int> subsets;
    std::vector<std::string> files;
    for (int b = 0; b < m; ++b) {
        int subset = 0;
        Eigen::Index records = 0;
        std::string records_key, file_key, file;
        if (!(manifest >> key >> subset >> records_key >> records >> file_key >> file) ||
            key != "block" || records_key != "records" || file_key != "file")
            throw Error(ErrorKind::io, manifest_path.string() + ": malformed block entry");
        widths.push_back(records);
        subsets.push_back(subset);
        files.push_back(file);
    }

    Eigen::Index total = std::accumulate(widths.begin(), widths.end(), Eigen::Index{0});
    Eigen::MatrixXd values(dim, total);
    Eigen::Index offset = 0;
    for (int b = 0; b < m; ++b) {
        Dataset block = load_csv(directory / files[static_cast<std::size_t>(b)]);
        if (block.attributes() != dim || block.records() != widths[static_cast<std::size_t>(b)])
            throw Error(ErrorKind::io,
                        (directory / files[static_cast<std::size_t>(b)]).string() +
                            ": block shape does not match the manifest");
        values.middleCols(offset, block.records()) = block.values();
        offset += block.records();
    }
    return TransformedDataset(std::move(values), std::move(widths), std::move(subsets));
}

void save_secrets(const ClientSecrets& secrets, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out)
        throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
    out << "rotclus-secrets-v1\n";
    out << "m " << secrets.m() << "\n";
    for (int i = 0; i < secrets.m(); ++i)
        out << "seed " << (i + 1) << " " << secrets.seeds[static_cast<std::size_t>(i)] << "\n";
    if (!out)
        throw Error(ErrorKind::io, "failed writing " + path.string());
}

ClientSecrets load_secrets(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw Error(ErrorKind::io, "cannot open " + path.string() + " for reading");

    std::string line;
    if (!std::getline(in, line) || line != "rotclus-secrets-v1")
        throw Error(ErrorKind::io, path.string() + ": unrecognized secrets format");

    std::string key;
    int m = 0;
    if (!(in >> key >> m) || key != "m" || m < 1)
        throw Error(ErrorKind::io, path.string() + ": malformed subset count");

    ClientSecrets secrets;
    secrets.seeds.resize(static_cast<std::size_t>(m));
    secrets.angles.reserve(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        int index = 0;
        Seed seed = 0;
        if (!(in >> key >> index >> seed) || key != "seed" || index != i + 1)
            throw Error(ErrorKind::io, path.string() + ": malformed seed entry");
        secrets.seeds[static_cast<std::size_t>(i)] = seed;
    }
    for (Seed s : secrets.seeds)
        secrets.angles.push_back(seed_to_angle(s));
    return secrets;
}

} // namespace rotclus
