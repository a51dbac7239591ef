#include <gtest/gtest.h>

#include <filesystem>
#include <sstream>

#include "translit/cli.hpp"
#include "translit/files.hpp"
#include "translit/unicode.hpp"

using namespace translit;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args, const std::string& stdin_text = "") {
  args.insert(args.begin(), "translit");
  std::istringstream in(stdin_text);
  std::ostringstream out, err;
  const int code = run_cli(args, in, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("translit_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }
  std::string path(const std::string& name) const { return (dir_ / name).string(); }
  std::string write(const std::string& name, const std::string& content) const {
    write_file_atomic(path(name), content);
    return path(name);
  }
  fs::path dir_;
};

}  // namespace

TEST_F(CliTest, RomanizeFileToFile) {
  const auto in = write("in.txt", "কলম রাত\nআম!\n");
  const auto r = run({"romanize", "--lang", "bn", "--mapping", std::string(TRANSLIT_SOURCE_DATA) + "/bengali.tsv",
                      "-i", in, "-o", path("out.txt")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_file(path("out.txt")), "kalam rat\nam!\n");
  EXPECT_NE(r.err.find("# translit romanize"), std::string::npos);
  EXPECT_NE(r.err.find("lang=\"bn\""), std::string::npos);
}

TEST_F(CliTest, RomanizeStdinHindiSentenceCase) {
  const auto r = run({"romanize", "--lang", "hi", "--sentence-case"}, "कमल। राम\n");
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, "Kamal। Raam\n");
}

TEST_F(CliTest, ExitCodes) {
  EXPECT_EQ(run({"romanize", "--lang", "xx"}).code, kExitValidation);
  EXPECT_EQ(run({"frobnicate"}).code, kExitValidation);
  EXPECT_EQ(run({}).code, kExitValidation);
  EXPECT_EQ(run({"romanize", "-i", path("missing.txt")}).code, kExitIo);
  EXPECT_EQ(run({"romanize", "--lang", "hi", "--mapping", std::string(TRANSLIT_SOURCE_DATA) + "/bengali.tsv"}, "x").code,
            kExitValidation);
  const auto bad_map = write("bad.tsv", "#script=bengali\t#virama=U+09CD\nC\tU+0995\tk\nC\tU+0995\tq\n");
  const auto r = run({"romanize", "--mapping", bad_map}, "ক\n");
  EXPECT_EQ(r.code, kExitValidation);
  EXPECT_NE(r.err.find("duplicate key"), std::string::npos);
  EXPECT_EQ(run({"--config", path("nope.ini"), "romanize"}).code, kExitIo);
  EXPECT_EQ(run({"--help"}).code, kExitOk);
}

TEST_F(CliTest, ConfigFileWithFlagOverride) {
  const auto cfg = write("run.ini", "[romanize]\nlang=hi\nsentence-case=true\n");
  auto r = run({"--config", cfg, "romanize"}, "कमल\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "Kamal\n");
  r = run({"--config", cfg, "romanize", "--lang", "bn"}, "কলম\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "Kalam\n");
  const auto unknown = write("bad.ini", "[romanize]\nflavour=strong\n");
  EXPECT_EQ(run({"--config", unknown, "romanize"}, "ক\n").code, kExitValidation);
}

TEST_F(CliTest, EvalIdenticalFiles) {
  const auto h = write("h.txt", "a b c d e\nরাত কলম\n");
  const auto r = run({"eval", "--hyp", h, "--ref", h, "--cer-by-length", "2"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("bleu=100.00\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("cer=0.00\n"), std::string::npos);
  EXPECT_NE(r.out.find("cer_by_length.1-2=0.00\n"), std::string::npos) << r.out;
  const auto short_ref = write("r.txt", "a\n");
  EXPECT_EQ(run({"eval", "--hyp", h, "--ref", short_ref}).code, kExitValidation);
}

TEST_F(CliTest, CorpusBuildOn49CharLine) {
  // "কলম " repeated to 49 codepoints.
  std::u32string line;
  while (line.size() < 49) line += U"কলম "[line.size() % 4];
  line.back() = U'ক';
  const auto in = write("short.txt", utf8_encode(line) + "\n");
  const auto r = run({"corpus", "build", "--lang", "bn", "--mode", "wiki_bn", "-i", in, "-o", path("out.csv")});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("pairs=0 discarded=1"), std::string::npos) << r.out;
  EXPECT_EQ(read_file(path("out.csv")), "native,roman,lang,source\n");
}

TEST_F(CliTest, CorpusBuildAndStatsMatchGolden) {
  const std::string data = TRANSLIT_TEST_DATA;
  for (const char* threads : {"1", "4"}) {
    const auto r = run({"corpus", "build", "--mode", "wiki_bn", "--threads", threads, "-i",
                        data + "/bn_wiki_fixture.txt", "-o", path("fx.csv")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(read_file(path("fx.csv")), read_file(data + "/bn_wiki_fixture.csv.golden"));
  }
  const auto s = run({"corpus", "stats", "--csv-column", "native", "-i", path("fx.csv")});
  ASSERT_EQ(s.code, 0) << s.err;
  EXPECT_EQ(s.out, read_file(data + "/bn_wiki_fixture.stats.golden"));
}

TEST_F(CliTest, NoiseIsSeededAndDeterministic) {
  const auto profile = write("p.txt", "long_vowel_shorten=1\nmedial_vowel_drop=0\nconsonant_simplify=0\nvw_swap=1\ncase_jitter=0\n");
  const auto r = run({"noise", "--profile", profile}, "vaah aam\n");
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "wah am\n");
  const std::string text = "Kabhi kabhi mere dil mein. Phir wahi raat hai\n";
  EXPECT_EQ(run({"noise", "--seed", "5"}, text).out, run({"noise", "--seed", "5"}, text).out);
  EXPECT_EQ(run({"noise", "--profile", write("bad.txt", "vw_swap=2\n")}, "x\n").code, kExitValidation);
}

TEST_F(CliTest, BpeTrainEncodeDecode) {
  const auto corpus = write("c.txt", "kalam rat\nami tumi kalam\nrat  din\n");
  auto r = run({"bpe", "train", "-i", corpus, "--size", "30", "-o", path("v.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"bpe", "encode", "--vocab", path("v.txt"), "--lang", "hi", "-i", corpus, "-o", path("ids.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(read_file(path("ids.txt")).rfind("4 ", 0), 0u);
  r = run({"bpe", "decode", "--vocab", path("v.txt"), "-i", path("ids.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, read_file(corpus));
  EXPECT_EQ(run({"bpe", "decode", "--vocab", path("v.txt")}, "4 x 3\n").code, kExitValidation);
  EXPECT_EQ(run({"bpe", "decode", "--vocab", path("v.txt")}, "99999\n").code, kExitValidation);
  EXPECT_EQ(run({"bpe", "train", "-i", corpus, "--size", "5"}).code, kExitValidation);
}

TEST_F(CliTest, LmTrainAndDerom) {
  const auto native = write("n.txt", "রাত রাত কলম\nআম রাত\n");
  auto r = run({"lm", "train", "--lang", "bn", "--order", "3", "--k", "0.1", "-i", native, "-o", path("lm.txt")});
  ASSERT_EQ(r.code, 0) << r.err;
  r = run({"derom", "--lang", "bn", "--lm", path("lm.txt")}, "rat xyz!\nkalam\n");
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.out, "রাত xyz!\nকলম\n");
  EXPECT_NE(r.err.find("fallbacks=1"), std::string::npos);
  EXPECT_EQ(run({"derom", "--lm", path("missing.txt")}, "rat\n").code, kExitIo);
}
