// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 orkg-lite contributors

#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "orkg/contribution.hpp"
#include "orkg/dump.hpp"
#include "orkg/error.hpp"
#include "support.hpp"

namespace orkg::graph {
namespace {

ErrorCode import_error(GraphStore& store, const std::string& text, std::string* message = nullptr) {
  std::istringstream in(text);
  try {
    import_dump(store, in);
  } catch (const Error& e) {
    if (message) *message = e.what();
    return e.code();
  }
  ADD_FAILURE() << "import succeeded";
  return ErrorCode::BadRequest;
}

TEST(ExportTest, EmptyStore) {
  GraphStore store;
  std::ostringstream out;
  EXPECT_EQ(export_dump(store, out), 0u);
  EXPECT_EQ(out.str(), "");
}

TEST(ExportTest, ExactRecordFormat) {
  GraphStore store = testing::fixed_clock_store();
  auto paper = store.create_node(NodeKind::Resource, "Paper \"1\"", {"Paper"});
  auto title = store.create_node(NodeKind::Literal, "Köln, 2018");
  auto has_title = store.create_node(NodeKind::Predicate, "has title");
  auto s = store.add_statement(paper, has_title, title, "curator-1");
  store.annotate_statement(s, "confidence", "manual");
  std::ostringstream out;
  EXPECT_EQ(export_dump(store, out), 4u);
  EXPECT_EQ(out.str(),
            "{\"kind\":\"resource\",\"id\":\"R1\",\"label\":\"Paper \\\"1\\\"\",\"classes\":[\"Paper\"]}\n"
            "{\"kind\":\"predicate\",\"id\":\"P1\",\"label\":\"has title\",\"classes\":[]}\n"
            "{\"kind\":\"literal\",\"id\":\"L1\",\"label\":\"Köln, 2018\",\"classes\":[]}\n"
            "{\"kind\":\"statement\",\"id\":\"S1\",\"subject\":\"R1\",\"predicate\":\"P1\",\"object\":\"L1\","
            "\"annotations\":{\"confidence\":\"manual\"},\"created_at\":\"2018-04-23T09:00:00Z\","
            "\"created_by\":\"curator-1\"}\n");
}

TEST(ExportTest, TwoNodesOneStatementIsThreeLines) {
  GraphStore store;
  auto a = store.create_node(NodeKind::Resource, "a");
  auto p = store.create_node(NodeKind::Predicate, "p");
  store.add_statement(a, p, a, "c");
  const auto text = export_dump(store);
  EXPECT_EQ(std::count(text.begin(), text.end(), '\n'), 3);
}

TEST(ExportTest, SinkFailure) {
  GraphStore store;
  store.create_node(NodeKind::Resource, "a");
  std::ostringstream out;
  out.setstate(std::ios::badbit);
  try {
    export_dump(store, out);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SinkFailure);
  }
}

TEST(ImportTest, FrankensteinRoundTrip) {
  GraphStore store = testing::fixed_clock_store();
  const auto& taxonomy = contrib::Taxonomy::shipped();
  auto vocab = contrib::ensure_vocabulary(store, taxonomy);
  contrib::ingest_paper(store, vocab, taxonomy, testing::frankenstein_submission());

  const auto dump = export_dump(store);
  GraphStore copy;
  std::istringstream in(dump);
  EXPECT_EQ(import_dump(copy, in), store.node_count() + store.statement_count());
  EXPECT_TRUE(copy == store);
  EXPECT_EQ(copy.counters(), store.counters());
  EXPECT_EQ(export_dump(copy), dump);
}

TEST(ImportTest, CountersAdvancePastMaximum) {
  GraphStore store;
  std::istringstream in(
      "{\"kind\":\"resource\",\"id\":\"R7\",\"label\":\"a\",\"classes\":[]}\n"
      "{\"kind\":\"predicate\",\"id\":\"P3\",\"label\":\"p\",\"classes\":[]}\n"
      "{\"kind\":\"statement\",\"id\":\"S9\",\"subject\":\"R7\",\"predicate\":\"P3\",\"object\":\"R7\","
      "\"annotations\":{},\"created_at\":\"2020-01-01T00:00:00Z\",\"created_by\":\"x\"}\n");
  EXPECT_EQ(import_dump(store, in), 3u);
  EXPECT_EQ(store.create_node(NodeKind::Resource, "b").str(), "R8");
  EXPECT_EQ(store.create_node(NodeKind::Predicate, "q").str(), "P4");
  EXPECT_EQ(store.create_node(NodeKind::Literal, "l").str(), "L1");
}

TEST(ImportTest, ForwardReference) {
  GraphStore store;
  EXPECT_EQ(import_error(store,
                         "{\"kind\":\"statement\",\"id\":\"S1\",\"subject\":\"R1\",\"predicate\":\"P1\","
                         "\"object\":\"R1\",\"annotations\":{},\"created_at\":\"2020-01-01T00:00:00Z\","
                         "\"created_by\":\"x\"}\n"
                         "{\"kind\":\"resource\",\"id\":\"R1\",\"label\":\"a\",\"classes\":[]}\n"),
            ErrorCode::ForwardReference);
  EXPECT_TRUE(store.empty());
}

TEST(ImportTest, TruncatedFinalLineReportsItsLineNumber) {
  GraphStore store;
  std::string message;
  EXPECT_EQ(import_error(store,
                         "{\"kind\":\"resource\",\"id\":\"R1\",\"label\":\"a\",\"classes\":[]}\n"
                         "{\"kind\":\"resource\",\"id\":\"R2\",\"label\":\"b\",\"clas",
                         &message),
            ErrorCode::MalformedRecord);
  EXPECT_NE(message.find("line 2"), std::string::npos) << message;
  EXPECT_TRUE(store.empty()) << "import must be atomic";
}

TEST(ImportTest, MalformedRecords) {
  GraphStore store;
  EXPECT_EQ(import_error(store, "not json\n"), ErrorCode::MalformedRecord);
  EXPECT_EQ(import_error(store, "{\"kind\":\"resource\",\"id\":\"P1\",\"label\":\"a\",\"classes\":[]}\n"),
            ErrorCode::MalformedRecord);
  EXPECT_EQ(import_error(store, "{\"kind\":\"widget\",\"id\":\"R1\",\"label\":\"a\",\"classes\":[]}\n"),
            ErrorCode::MalformedRecord);
  EXPECT_EQ(import_error(store, "{\"kind\":\"resource\",\"id\":\"R1\",\"label\":\" \",\"classes\":[]}\n"),
            ErrorCode::MalformedRecord);
  EXPECT_EQ(import_error(store,
                         "{\"kind\":\"resource\",\"id\":\"R1\",\"label\":\"a\",\"classes\":[]}\n"
                         "{\"kind\":\"predicate\",\"id\":\"P1\",\"label\":\"p\",\"classes\":[]}\n"
                         "{\"kind\":\"statement\",\"id\":\"S1\",\"subject\":\"R1\",\"predicate\":\"P1\","
                         "\"object\":\"R1\",\"annotations\":{},\"created_at\":\"yesterday\",\"created_by\":\"x\"}\n"),
            ErrorCode::MalformedRecord);
  EXPECT_TRUE(store.empty());
}

TEST(ImportTest, MergeModeAndCollisions) {
  GraphStore store;
  store.create_node(NodeKind::Resource, "existing");
  const std::string record = "{\"kind\":\"resource\",\"id\":\"R1\",\"label\":\"a\",\"classes\":[]}\n";
  EXPECT_EQ(import_error(store, record), ErrorCode::BadRequest);
  std::istringstream collide(record);
  try {
    import_dump(store, collide, ImportMode::Merge);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IdCollision);
  }
  std::istringstream fresh("{\"kind\":\"resource\",\"id\":\"R5\",\"label\":\"a\",\"classes\":[]}\n");
  EXPECT_EQ(import_dump(store, fresh, ImportMode::Merge), 1u);
  EXPECT_EQ(store.node_count(), 2u);
}

// Random stores: export -> import -> export is the identity, and the
// imported store equals the original.
TEST(ImportTest, PropertyRoundTripOnRandomStores) {
  std::mt19937 rng(5);
  for (int round = 0; round < 20; ++round) {
    GraphStore store;
    std::vector<NodeId> resources, predicates, objects;
    for (int i = 0; i < 30; ++i) {
      resources.push_back(store.create_node(NodeKind::Resource, "r\"" + std::to_string(i) + "\\é",
                                            i % 3 ? std::set<std::string>{} : std::set<std::string>{"C", "D"}));
      objects.push_back(resources.back());
      if (i % 4 == 0) predicates.push_back(store.create_node(NodeKind::Predicate, "p" + std::to_string(i)));
      if (i % 2 == 0) objects.push_back(store.create_node(NodeKind::Literal, "l,\n" + std::to_string(i)));
    }
    std::vector<StatementId> ids;
    std::uniform_int_distribution<std::size_t> r(0, resources.size() - 1), p(0, predicates.size() - 1),
        o(0, objects.size() - 1);
    for (int i = 0; i < 120; ++i) {
      try {
        ids.push_back(store.add_statement(resources[r(rng)], predicates[p(rng)], objects[o(rng)], "c" + std::to_string(i % 3)));
        if (i % 5 == 0) store.annotate_statement(ids.back(), "k" + std::to_string(i % 2), "v\t" + std::to_string(i));
        if (i % 7 == 0) store.delete_statement(ids[ids.size() / 2]);
      } catch (const Error&) {
      }
    }
    const auto dump = export_dump(store);
    GraphStore copy;
    std::istringstream in(dump);
    import_dump(copy, in);
    ASSERT_TRUE(copy == store);
    ASSERT_EQ(export_dump(copy), dump);
  }
}

}  // namespace
}  // namespace orkg::graph
