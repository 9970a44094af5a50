#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "mg/cli.hpp"

using namespace mg;

namespace {

struct Invocation {
  int status;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int status = cli_main(args, out, err);
  return {status, out.str(), err.str()};
}

nlohmann::json report(std::vector<std::string> args) {
  args.insert(args.begin(), {"--format", "json"});
  return nlohmann::json::parse(invoke(std::move(args)).out);
}

}  // namespace

TEST_CASE("documented invocations") {
  CHECK(invoke({"iso", "--marked", "<a|a^2>", "<a|a^2,a^4>", "--budget", "100000"}).status == kExitYes);

  Invocation ex = invoke({"extract", "--budget", "1000000", "--relators", "a^6,a^10", "--target", "<a|a^6,a^10>"});
  CHECK(ex.status == kExitYes);
  CHECK(ex.out.rfind("{a^6, a^10}\n", 0) == 0);

  // N = 2 breaks the commutator relation already at n = 1.
  Invocation w2 = invoke({"witness", "--N", "2"});
  CHECK(w2.status == kExitNo);
  CHECK(invoke({"witness", "--N", "3"}).status == kExitYes);
  CHECK(invoke({"witness", "--N", "1"}).status == kExitInput);
}

TEST_CASE("report shape") {
  nlohmann::json r = report({"iso", "--marked", "<a|a^2>", "<a|a^2,a^4>", "--budget", "100000"});
  for (const char* key : {"command", "inputs", "budget", "outcome", "steps_used", "certificate"}) CHECK(r.contains(key));
  CHECK(r["command"] == "iso");
  CHECK(r["budget"] == 100000);
  CHECK(r["outcome"] == "accepted");

  nlohmann::json w = report({"witness", "--N", "3"});
  CHECK(w["certificate"]["sigma0"].size() == 15);
  CHECK(w["certificate"]["commutators"].size() == 4);
  CHECK(w["certificate"]["commutators"][3]["identity"] == false);
}

TEST_CASE("exit status") {
  CHECK(invoke({"wp", "--group", "cyclic:6", "a^6"}).status == kExitYes);
  CHECK(invoke({"wp", "--group", "cyclic:6", "a^6", "a^2"}).status == kExitNo);
  CHECK(invoke({"wp", "--group", "abelian:2:2,0;0,3", "a^4b^3", "[a,b]"}).status == kExitYes);
  CHECK(invoke({"wp", "--group", "lamplighter", "[a,b]"}).status == kExitNo);
  CHECK(invoke({"wp", "--group", "perm:(1 0 2);(0 2 1)", "(ab)^3"}).status == kExitYes);
  CHECK(invoke({"consequences", "<a|a^2>", "--word", "a^4", "--budget", "1000"}).status == kExitYes);
  CHECK(invoke({"consequences", "<a|a^2>", "--word", "a", "--budget", "1000"}).status == kExitExhausted);
  CHECK(invoke({"quotient", "--of", "<a|a^6>", "--candidate", "<a|a^2>", "--budget", "100000"}).status == kExitYes);
  CHECK(invoke({"quotient", "--algo", "fp-wpi", "--of", "<a|a^6>", "--candidate", "cyclic:4", "--budget", "100"})
            .status == kExitNo);
  CHECK(invoke({"quotient", "--algo", "lamplighter", "--candidate", "sigma:3", "--budget", "100000"}).status ==
        kExitNo);
  CHECK(invoke({"mckinsey", "<a|a^2>", "aaa", "--budget", "10000000"}).status == kExitNo);
  CHECK(invoke({"kuznetsov", "<a|a^5>", "a^10", "--budget", "10000000"}).status == kExitYes);
  CHECK(invoke({"pickel", "<a|a^2>", "<a|a^2>", "--max-order", "4", "--budget", "100000"}).status ==
        kExitExhausted);
  CHECK(invoke({"gadget", "lockhart", "--machine", "halt-3", "--word", "a^6", "--budget", "100"}).status == kExitYes);
  CHECK(invoke({"gadget", "co-re", "--machine", "loop", "--word", "a", "--budget", "1000"}).status ==
        kExitExhausted);
  CHECK(invoke({"iso", "--abstract", "<a,b|b>", "<a|>", "--budget", "1000000"}).status == kExitYes);
}

TEST_CASE("usage and input errors") {
  CHECK(invoke({}).status == kExitUsage);
  CHECK(invoke({"frobnicate"}).status == kExitUsage);
  CHECK(invoke({"consequences", "<a|a^2>", "--word", "a"}).status == kExitUsage);
  CHECK(invoke({"iso", "<a|>", "<a|>", "--budget", "10"}).status == kExitUsage);
  CHECK(invoke({"--format", "yaml", "witness", "--N", "3"}).status == kExitUsage);
  CHECK(invoke({"gadget", "lockhart", "--machine", "/nonexistent/machine.txt", "--budget", "10"}).status ==
        kExitNoInput);

  Invocation bad = invoke({"consequences", "<a|a^^2>", "--word", "a", "--budget", "10"});
  CHECK(bad.status == kExitInput);
  CHECK(bad.err.find("position 5") != std::string::npos);
  CHECK(bad.err.find("       ^") != std::string::npos);

  CHECK(invoke({"wp", "--group", "cyclic:x", "a"}).status == kExitInput);
  CHECK(invoke({"wp", "--group", "cyclic:3", "ab"}).status == kExitInput);
  CHECK(invoke({"extract", "--relators", "a^2;a", "--budget", "10"}).status == kExitInput);
}

TEST_CASE("identical invocations give identical reports") {
  const std::vector<std::vector<std::string>> runs{
      {"--format", "json", "mckinsey", "<a,b|[a,b]>", "a^2B^2", "--certificate", "--budget", "10000000"},
      {"--format", "json", "extract", "--lamplighter", "--budget", "200000"},
      {"--format", "json", "iso", "--abstract", "<a|a^2>", "<a,b|a^2,b>", "--budget", "1000000"}};
  for (const auto& args : runs) {
    Invocation first = invoke(args), second = invoke(args);
    CHECK(first.status == second.status);
    CHECK(first.out == second.out);
  }
}
