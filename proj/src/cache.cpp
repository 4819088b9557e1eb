#include "ptower/cache.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

#include "ptower/io.hpp"

namespace fs = std::filesystem;

namespace ptower
{

namespace
{

std::uint64_t fnv1a(const std::string &s)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::string header_params(const EnumerationConfig &cfg)
{
    std::ostringstream os;
    os << "working_precision " << cfg.working_precision << '\n'
       << "precision_cap " << cfg.eval.precision_cap << '\n'
       << "magnitude_cap " << Float::from_string(std::to_string(cfg.eval.magnitude_cap_log10), 64, MPFR_RNDN)
                                  .to_string(17)
       << '\n'
       << "dedup_width " << cfg.dedup_width.to_string(17) << '\n';
    return os.str();
}

std::vector<std::string> split_tabs(const std::string &line)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == '\t') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

} // namespace

std::string config_fingerprint(const EnumerationConfig &cfg)
{
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0')
       << fnv1a("v" + std::to_string(cache_format_version) + "\n" + header_params(cfg));
    return os.str();
}

fs::path WeightClassCache::class_path(unsigned long w, const std::string &fingerprint) const
{
    return dir_ / ("w" + std::to_string(w) + "." + fingerprint + ".ptc");
}

std::string render_class_file(const Enumeration &en, unsigned long w, const std::string &fingerprint)
{
    const auto cls = en.weight_class(w);
    std::ostringstream os;
    os << cache_magic << ' ' << cache_format_version << '\n'
       << "weight " << w << '\n'
       << header_params(en.config()) << "fingerprint " << fingerprint << '\n'
       << "records " << cls.size() << '\n';
    for (const EnumerationEntry *e : cls) {
        const BallText t = to_text(e->value, en.config().working_precision);
        os << e->index << '\t' << serialize(e->expr) << '\t' << t.kind << '\t' << t.mid << '\t' << t.rad << '\t'
           << e->novelty.str() << '\n';
    }
    return os.str();
}

void WeightClassCache::store(const Enumeration &en, unsigned long w, const std::string &fingerprint) const
{
    const fs::path target = class_path(w, fingerprint);
    const fs::path tmp = target.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw cache_mismatch("cannot write cache file " + tmp.string());
        }
        out << render_class_file(en, w, fingerprint);
    }
    fs::rename(tmp, target);
    ++stats_.written;
}

void WeightClassCache::load(Enumeration &en, const fs::path &p, const std::string &fingerprint) const
{
    std::ifstream in(p, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    const std::string text = buf.str();
    const unsigned long w = en.max_weight() + 1;

    auto bad = [&](const std::string &why) {
        return cache_mismatch("cache file " + p.string() + " rejected: " + why);
    };

    std::istringstream lines(text);
    std::string line;
    std::ostringstream expected_header;
    expected_header << cache_magic << ' ' << cache_format_version << '\n'
                    << "weight " << w << '\n'
                    << header_params(en.config()) << "fingerprint " << fingerprint << '\n';
    const std::string want = expected_header.str();
    if (text.compare(0, want.size(), want) != 0) {
        throw bad("header does not match the current configuration");
    }
    lines.seekg(static_cast<std::streamoff>(want.size()));
    std::size_t count = 0;
    if (!std::getline(lines, line) || line.rfind("records ", 0) != 0) {
        throw bad("missing record count");
    }
    count = std::stoull(line.substr(8));

    std::vector<Expr> exprs;
    std::vector<Novelty> novelty;
    std::vector<std::vector<std::string>> fields;
    while (std::getline(lines, line)) {
        auto f = split_tabs(line);
        if (f.size() != 6) {
            throw bad("malformed record '" + line + "'");
        }
        if (std::stoull(f[0]) != en.size() + exprs.size() + 1) {
            throw bad("non-contiguous index " + f[0]);
        }
        exprs.push_back(parse(f[1]));
        novelty.push_back(Novelty::parse(f[5]));
        fields.push_back(std::move(f));
    }
    if (exprs.size() != count) {
        throw bad("record count mismatch");
    }
    try {
        en.append_class(exprs, novelty);
    } catch (const domain_error &ex) {
        throw bad(ex.what());
    }
    // Values are recomputed; the stored text must agree with them.
    const auto cls = en.weight_class(w);
    for (std::size_t i = 0; i < cls.size(); ++i) {
        const BallText t = to_text(cls[i]->value, en.config().working_precision);
        if (t.kind != fields[i][2] || t.mid != fields[i][3] || t.rad != fields[i][4]) {
            throw bad("stored value of record " + fields[i][0] + " disagrees with evaluation");
        }
    }
    ++stats_.loaded;
}

void WeightClassCache::materialize(Enumeration &en, unsigned long max_weight) const
{
    stats_ = {};
    const std::string fp = config_fingerprint(en.config());
    fs::create_directories(dir_);
    while (en.max_weight() < max_weight) {
        const unsigned long w = en.max_weight() + 1;
        const fs::path p = class_path(w, fp);
        if (!force_ && fs::exists(p)) {
            try {
                load(en, p, fp);
            } catch (const cache_mismatch &) {
                throw;
            } catch (const std::exception &ex) {
                throw cache_mismatch("cache file " + p.string() + " rejected: " + ex.what());
            }
            continue;
        }
        const std::string prefix = "w" + std::to_string(w) + ".";
        for (const auto &entry : fs::directory_iterator(dir_)) {
            const std::string name = entry.path().filename().string();
            if (name.rfind(prefix, 0) == 0 && entry.path().extension() == ".ptc" && entry.path() != p) {
                if (!force_) {
                    throw cache_mismatch("stale cache file " + entry.path().string()
                                         + " was written with a different configuration; rerun with --force "
                                           "to regenerate");
                }
                fs::remove(entry.path());
            }
        }
        en.extend_to(w);
        store(en, w, fp);
    }
}

} // namespace ptower
