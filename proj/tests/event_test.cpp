#include <gtest/gtest.h>

#include "oracle.hpp"

using namespace bnexplain;

TEST(ValueSet, Basics) {
  auto s = ValueSet::of({0, 2});
  EXPECT_TRUE(s.contains(0));
  EXPECT_FALSE(s.contains(1));
  EXPECT_EQ(s.count(), 2u);
  EXPECT_TRUE(ValueSet::single(2).subset_of(s));
  EXPECT_EQ(ValueSet::full(3).bits(), 7u);
  EXPECT_EQ(ValueSet::full(64).count(), 64u);
  EXPECT_EQ(s.indices(), (std::vector<std::size_t>{0, 2}));
  EXPECT_TRUE((s & ValueSet::single(1)).empty());
}

TEST(Event, RequireIntersects) {
  Event e;
  e.require(0, ValueSet::of({0, 1}));
  e.require(0, ValueSet::of({1, 2}));
  EXPECT_EQ(*e.find(0), ValueSet::single(1));
  e.require(0, std::size_t{2});
  EXPECT_TRUE(e.contradictory());
}

TEST(Event, SatisfiedBy) {
  auto e = Event::literal(0, ValueSet::of({1, 2})).conjoin(Event::literal(2, 0));
  EXPECT_TRUE(e.satisfied_by(Assignment{{1, 5, 0}}));
  EXPECT_FALSE(e.satisfied_by(Assignment{{0, 5, 0}}));
  EXPECT_TRUE(Event{}.satisfied_by(Assignment{{0}}));
}

TEST(Event, WithoutAndContains) {
  auto e = Event::literal(0, 1).conjoin(Event::literal(1, 0));
  EXPECT_TRUE(e.contains_literals_of(Event::literal(1, 0)));
  EXPECT_FALSE(e.contains_literals_of(Event::literal(1, 1)));
  EXPECT_EQ(e.without({0}), Event::literal(1, 0));
}

TEST(Normalized, DropsFullDomainLiterals) {
  auto net = scenarios::four_coin();
  auto e = make_event(net, LabelLiterals{{"C", {"C1", "C2", "C3", "C4"}}, {"T1", {"h"}}});
  EXPECT_EQ(e, make_event(net, {{"T1", "h"}}));
  EXPECT_THROW(normalized(net, Event::literal(1, ValueSet{})), ValidationError);
  EXPECT_THROW(normalized(net, Event::literal(1, 5)), ValidationError);
  EXPECT_THROW(normalized(net, Event::literal(9, 0)), ValidationError);
}

TEST(MakeEvent, UnknownNamesAreErrors) {
  auto net = scenarios::coin_bag();
  EXPECT_THROW(make_event(net, {{"Q", "h"}}), ValidationError);
  EXPECT_THROW(make_event(net, {{"R", "x"}}), ValidationError);
}

TEST(Describe, Formats) {
  auto net = scenarios::four_coin();
  EXPECT_EQ(describe(net.variables(), Event{}), "(true)");
  EXPECT_EQ(describe(net.variables(), make_event(net, LabelLiterals{{"C", {"C1", "C2"}}, {"T1", {"h"}}})),
            "C in {C1,C2} & T1=h");
}
