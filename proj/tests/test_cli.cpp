#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "ptower/cache.hpp"
#include "ptower/cli.hpp"

using namespace ptower;
namespace fs = std::filesystem;

namespace
{

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args)
{
    std::ostringstream out, err;
    const int code = cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

struct TempDir {
    fs::path path;
    TempDir()
    {
        static int counter = 0;
        path = fs::temp_directory_path() / ("ptower-test-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
        fs::remove_all(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string str() const { return path.string(); }
};

std::vector<std::string> lines(const std::string &s)
{
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string l;
    while (std::getline(in, l)) {
        out.push_back(l);
    }
    return out;
}

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

EntryRow row_from(const std::vector<std::string> &f)
{
    REQUIRE(f.size() == 6);
    return {f[0], f[1], f[2], f[3], f[4], f[5]};
}

} // namespace

TEST_CASE("enumerate command")
{
    const Result r = run({"enumerate", "--max-weight", "4", "--format", "plain", "--no-cache"});
    CHECK(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 5);
    CHECK(ls[0] == "1\t2\t(1/1)\t1e+00\t0\tnew");
    CHECK(ls[3].rfind("4\t4\t(1/3)\t", 0) == 0);
    CHECK(ls[4] == "5\t4\t(3/1)\t3e+00\t0\tnew");
    CHECK(run({"enumerate", "--max-weight", "4", "--format", "plain", "--no-cache"}).out == r.out);
    CHECK(run({"enumerate", "--max-weight", "1", "--no-cache"}).code == 2);
    CHECK(run({"enumerate", "--no-cache"}).code == 2);
    CHECK(run({"enumerate", "--max-weight", "4", "--format", "xml", "--no-cache"}).code == 2);
    CHECK(run({"frobnicate"}).code == 2);
    CHECK(run({}).code == 2);
}

TEST_CASE("eval command")
{
    const Result r = run({"eval", "(2/1)^((2/1)^(1/2))", "--digits", "30"});
    CHECK(r.code == 0);
    CHECK(r.out == "2.665144142690225188650297249873\n");
    CHECK(run({"eval", "(1/3)", "--digits", "5"}).out == "0.33333\n");
    CHECK(run({"eval", "(0/1)"}).code == 2);
    CHECK(run({"eval", "2^^3"}).code == 2);
    const Result big = run({"eval", "9^9^9^9"});
    CHECK(big.code == 4);
    CHECK(big.err.find("astronomical") != std::string::npos);
    const Result amb = run({"eval", "(4/1)^(1/2)", "--digits", "3", "--precision-cap", "2048"});
    CHECK(amb.code == 4);
    CHECK(amb.err.find("terminating") != std::string::npos);
}

TEST_CASE("approx command")
{
    const Result r = run({"approx", "--target", "e", "--max-weight", "10", "--shape", "simple"});
    CHECK(r.code == 0);
    const auto f = split(lines(r.out).at(0), '\t');
    REQUIRE(f.size() == 9);
    CHECK(f[0] == "e");
    CHECK(f[1] == "simple");
    CHECK(f[7] == "separated");

    const Result hit = run({"approx", "--target", "2pow-sqrt2", "--max-weight", "9", "--shape", "full"});
    CHECK(hit.code == 0);
    const auto h = split(lines(hit.out).at(0), '\t');
    CHECK(h[3] == "(2/1)^((2/1)^(1/2))");
    CHECK(h[4] == "0");
    CHECK(h[7] == "indistinguishable");

    CHECK(run({"approx", "--target", "e", "--max-weight", "5", "--shape", "simple"}).code == 5);
    CHECK(run({"approx", "--target", "e", "--max-weight", "5", "--shape", "oval"}).code == 2);
    CHECK(run({"approx", "--target", "nope"}).code == 2);

    const Result table = run({"approx", "--target", "e", "--table", "6,8,10,12", "--format", "csv"});
    CHECK(table.code == 0);
    CHECK(lines(table.out).size() == 5);
    CHECK(run({"approx", "--target", "e", "--table", "8,6"}).code == 2);
    CHECK(run({"approx", "--target", "e", "--table", "6,x"}).code == 2);
    CHECK(run({"approx", "--target", "3.14159", "--radius", "0.00001", "--max-weight", "8"}).code == 0);
}

TEST_CASE("diag and stats commands")
{
    TempDir dir;
    const Result d = run({"diag", "--n", "50", "--max-weight", "12", "--cache-dir", dir.str()});
    CHECK(d.code == 0);
    const auto ls = lines(d.out);
    REQUIRE(ls.size() >= 52);
    CHECK(ls[0].size() == std::string("diagonal 0.").size() + 50);
    CHECK(ls[1] == "k,index,value_digit,diagonal_digit");
    CHECK(ls.back().rfind("verify pass", 0) == 0);

    const Result short_run = run({"diag", "--n", "10", "--max-weight", "2", "--no-cache"});
    CHECK(short_run.code == 6);
    CHECK(short_run.err.find("--max-weight 6") != std::string::npos);

    const Result s = run({"stats", "--max-weight", "6", "--format", "csv", "--no-cache"});
    CHECK(s.code == 0);
    CHECK(s.out == "weight,syntactic,new_value,duplicate,unresolved,astronomical\n"
                   "2,1,1,0,0,0\n3,2,2,0,0,0\n4,2,2,0,0,0\n5,4,4,0,0,0\n6,4,4,0,0,0\n");
}

TEST_CASE("output formats carry identical records")
{
    const std::vector<std::string> base = {"enumerate", "--max-weight", "9", "--no-cache", "--format"};
    auto with = [&](const std::string &fmt) {
        auto a = base;
        a.push_back(fmt);
        const Result r = run(a);
        REQUIRE(r.code == 0);
        return lines(r.out);
    };
    const auto plain = with("plain");
    const auto csv = with("csv");
    const auto jsonl = with("jsonl");
    REQUIRE(csv.size() == plain.size() + 1);
    REQUIRE(jsonl.size() == plain.size());
    CHECK(csv[0] == "index,weight,expression,midpoint,radius,novelty");
    bool saw_unresolved = false;
    for (std::size_t i = 0; i < plain.size(); ++i) {
        const EntryRow p = row_from(split(plain[i], '\t'));
        const EntryRow c = row_from(split(csv[i + 1], ','));
        const auto j = nlohmann::json::parse(jsonl[i]);
        const EntryRow js{std::to_string(j.at("index").get<long>()), std::to_string(j.at("weight").get<long>()),
                          j.at("expression"),
                          j.at("midpoint"),
                          j.at("radius"),
                          j.at("novelty")};
        CHECK(p == c);
        CHECK(p == js);
        saw_unresolved = saw_unresolved || p.novelty.rfind("unresolved:", 0) == 0;
    }
    CHECK(saw_unresolved);
}

TEST_CASE("cache round trip and fingerprinting")
{
    TempDir dir;
    const std::vector<std::string> cmd = {"enumerate", "--max-weight", "9", "--cache-dir", dir.str()};
    const Result cold = run(cmd);
    REQUIRE(cold.code == 0);
    std::size_t files = 0;
    for (const auto &e : fs::directory_iterator(dir.path)) {
        CHECK(e.path().extension() == ".ptc");
        ++files;
    }
    CHECK(files == 8);
    const Result warm = run(cmd);
    CHECK(warm.code == 0);
    CHECK(warm.out == cold.out);

    // Extending reuses the lighter classes.
    const Result longer = run({"enumerate", "--max-weight", "10", "--cache-dir", dir.str()});
    CHECK(longer.code == 0);
    CHECK(longer.out.rfind(cold.out, 0) == 0);

    for (const char *flag : {"--precision-cap", "--magnitude-cap"}) {
        const Result stale = run({"enumerate", "--max-weight", "9", "--cache-dir", dir.str(), flag, "4096"});
        CHECK(stale.code == 3);
        CHECK(stale.err.find("--force") != std::string::npos);
    }
    const Result forced =
        run({"enumerate", "--max-weight", "9", "--cache-dir", dir.str(), "--precision-cap", "4096", "--force"});
    CHECK(forced.code == 0);
    CHECK(run({"enumerate", "--max-weight", "9", "--cache-dir", dir.str(), "--precision-cap", "4096"}).code == 0);
    // The old configuration's files were replaced.
    CHECK(run(cmd).code == 3);
}

TEST_CASE("corrupt cache files are rejected")
{
    TempDir dir;
    const std::vector<std::string> cmd = {"enumerate", "--max-weight", "7", "--cache-dir", dir.str()};
    REQUIRE(run(cmd).code == 0);
    fs::path victim;
    for (const auto &e : fs::directory_iterator(dir.path)) {
        if (e.path().filename().string().rfind("w7.", 0) == 0) {
            victim = e.path();
        }
    }
    REQUIRE_FALSE(victim.empty());
    std::stringstream buf;
    buf << std::ifstream(victim).rdbuf();
    std::string text = buf.str();
    const auto pos = text.find("(1/6)");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 5, "(6/1)");
    std::ofstream(victim, std::ios::trunc) << text;
    CHECK(run(cmd).code == 3);
}

TEST_CASE("cache files are byte deterministic")
{
    TempDir a, b;
    REQUIRE(run({"enumerate", "--max-weight", "8", "--cache-dir", a.str(), "--threads", "1"}).code == 0);
    REQUIRE(run({"enumerate", "--max-weight", "8", "--cache-dir", b.str(), "--threads", "4"}).code == 0);
    for (const auto &e : fs::directory_iterator(a.path)) {
        std::stringstream x, y;
        x << std::ifstream(e.path()).rdbuf();
        y << std::ifstream(b.path / e.path().filename()).rdbuf();
        CHECK(x.str() == y.str());
        CHECK(x.str().rfind("PTOWER-CACHE 1\n", 0) == 0);
    }
}

TEST_CASE("run config validation")
{
    cli::RunConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.dedup_width = "1";
    CHECK_THROWS(cfg.validate());
    cfg.dedup_width = "1e-10";
    cfg.magnitude_cap_log10 = 0;
    CHECK_THROWS(cfg.validate());
    CHECK(run({"enumerate", "--max-weight", "3", "--no-cache", "--dedup-width", "2"}).code == 2);
    CHECK(run({"enumerate", "--max-weight", "3", "--no-cache", "--threads", "-1"}).code == 2);
}
