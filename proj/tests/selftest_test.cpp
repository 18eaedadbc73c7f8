// Copyright 2026 The kduncert Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <set>

#include "kduncert/errors.hpp"
#include "selftest.hpp"

namespace kduncert {
namespace {

selftest::Options small() {
    selftest::Options o;
    o.optimizer.n_restarts = 8;
    return o;
}

TEST(Selftest, PropertyNamesAreUniqueAndCoverEveryModule) {
    const std::vector<std::string> &names = selftest::property_names();
    EXPECT_EQ(std::set<std::string>(names.begin(), names.end()).size(), names.size());
    std::set<std::string> prefixes;
    for (const std::string &n : names) {
        prefixes.insert(n.substr(0, n.find('.')));
    }
    EXPECT_EQ(prefixes, (std::set<std::string>{"core", "kd", "opt", "unc", "wit"}));
}

TEST(Selftest, EveryPropertyPassesOnOneInstance) {
    for (const std::string &name : selftest::property_names()) {
        const selftest::PropertyResult r = selftest::run_property(name, small(), 1);
        EXPECT_EQ(r.instances, 1) << name;
        EXPECT_TRUE(r.passed) << name << " worst " << r.worst;
    }
    selftest::Options o = small();
    o.samples = 1;
    const selftest::Report report = selftest::run_all(o);
    EXPECT_EQ(report.properties.size(), selftest::property_names().size());
}

TEST(Selftest, DefaultCountsMeetTheMinimum) {
    selftest::Options o = small();
    o.samples.reset();
    const selftest::PropertyResult r = selftest::run_property("kd.marginals", o);
    EXPECT_GE(r.instances, 30);
    EXPECT_TRUE(r.passed);
}

TEST(Selftest, DeterministicForSeed) {
    selftest::Options o = small();
    o.seed = 3;
    const selftest::PropertyResult a = selftest::run_property("opt.trace_norm_sup", o, 5);
    const selftest::PropertyResult b = selftest::run_property("opt.trace_norm_sup", o, 5);
    EXPECT_EQ(a.worst, b.worst);
    EXPECT_EQ(a.worst_instance, b.worst_instance);
}

TEST(Selftest, InjectedFailureFailsOnlyThatProperty) {
    selftest::Options o = small();
    o.samples = 1;
    o.inject_failure = "unc.tsallis_half";
    const selftest::Report report = selftest::run_all(o);
    EXPECT_FALSE(report.passed);
    for (const selftest::PropertyResult &p : report.properties) {
        EXPECT_EQ(p.passed, p.name != "unc.tsallis_half") << p.name;
    }
    const nlohmann::json j = selftest::to_json(report);
    EXPECT_FALSE(j.at("passed").get<bool>());
    EXPECT_NE(selftest::summary(report).find("FAIL unc.tsallis_half"), std::string::npos);
}

TEST(Selftest, RejectsBadOptions) {
    selftest::Options o = small();
    o.dims = {};
    EXPECT_THROW(selftest::run_all(o), Error);
    o = small();
    o.samples = 0;
    EXPECT_THROW(selftest::run_all(o), Error);
    EXPECT_THROW(selftest::run_property("nope", small()), Error);
}

}  // namespace
}  // namespace kduncert
