"""Deterministic reference corpus of 69 synthetic case records.

Demographic marginals are fixed: sex 65 female / 4 male; literacy 33
signature-only, 7 no-signature, 13 grade-1-5, 12 grade-6-10, 4 ssc-hsc;
marital status 51 married, 3 widowed, 1 divorced, 2 unmarried, 12
unspecified; occupations 17 unemployed-nifw, 15 unemployed-lw, 15 housemaid,
10 small-business, 5 waste-collector, 4 any-job and one each of
rickshaw-driver, daily-labor, street-people. Narrative vocabulary reuses the
reference graph labels so corpus queries hit graph nodes.
"""

from __future__ import annotations

import random
from typing import List

from counselgraph.corpus.records import CaseRecord, Demographics, SessionNote
from counselgraph.kg.fixture import (
    CAUSE_LABELS,
    EFFECT_LABELS,
    INTERVENTION_LABELS,
    OUTCOME_LABELS,
    POVERTY_DRIVER_LABELS,
)

DEFAULT_SEED = 20
CASE_COUNT = 69

LITERACY_COUNTS = {
    "signature-only": 33,
    "no-signature": 7,
    "grade-1-5": 13,
    "grade-6-10": 12,
    "ssc-hsc": 4,
}

OCCUPATION_COUNTS = {
    "unemployed-nifw": 17,
    "unemployed-lw": 15,
    "housemaid": 15,
    "small-business": 10,
    "waste-collector": 5,
    "any-job": 4,
    "rickshaw-driver": 1,
    "daily-labor": 1,
    "street-people": 1,
}

SEX_COUNTS = {"female": 65, "male": 4}

MARITAL_COUNTS = {
    "married": 51,
    "unspecified": 12,
    "widowed": 3,
    "unmarried": 2,
    "divorced": 1,
}

# Sprinkled into narratives; the source notes mix Bangla phrases into
# otherwise English summaries.
_BANGLA_PHRASES = (
    "দুশ্চিন্তা",  # dushchinta, worry
    "কষ্ট",  # koshto, hardship
    "ঘুম",  # ghum, sleep
    "সংসার",  # songsar, household
    "মন খারাপ",  # mon kharap, low mood
)

_OCCUPATION_TEXT = {
    "unemployed-nifw": "is not currently working and is not looking for work",
    "unemployed-lw": "is out of work and looking for work",
    "housemaid": "works as a housemaid in a nearby household",
    "small-business": "runs a small business from home",
    "waste-collector": "collects waste for a living",
    "any-job": "takes any job that pays by the month",
    "rickshaw-driver": "drives a rickshaw",
    "daily-labor": "does daily labor when work is available",
    "street-people": "lives on the street",
}


def _flatten(counts: "dict[str, int]") -> List[str]:
    values: List[str] = []
    for key, count in counts.items():
        values.extend([key] * count)
    return values


def _sample(rng: random.Random, pool, k: int) -> List[str]:
    k = min(k, len(pool))
    return rng.sample(list(pool), k)


def _intake_narrative(
    rng: random.Random,
    demo: Demographics,
    causes: List[str],
    effects: List[str],
) -> str:
    parts = [
        f"The client, a {demo.age}-year-old who {_OCCUPATION_TEXT[demo.occupation]},"
        " came to the first session accompanied by a relative.",
        f"She described {causes[0]} as the main pressure on the family."
        if demo.sex == "female"
        else f"He described {causes[0]} as the main pressure on the family.",
    ]
    for cause in causes[1:]:
        parts.append(f"On further questioning, {cause} also came up repeatedly.")
    parts.append(
        "Since these problems began the client has been experiencing "
        + " and ".join(effects)
        + "."
    )
    if rng.random() < 0.5:
        phrase = rng.choice(_BANGLA_PHRASES)
        parts.append(f'When asked to name the feeling, the client used the word "{phrase}".')
    parts.append(
        "The para-counselor recorded the presenting problems, explained the "
        "session plan, and agreed on a weekly meeting."
    )
    return " ".join(parts)


def _progress_narrative(
    rng: random.Random,
    session_index: int,
    causes: List[str],
    effects: List[str],
    interventions: List[str],
) -> str:
    applied = interventions[(session_index - 2) % len(interventions)]
    parts = [
        f"In session {session_index} the client reviewed the week with the para-counselor.",
        f"The ongoing {rng.choice(causes)} continued to weigh on the household.",
        f"The para-counselor worked through {applied} with the client and practiced it together.",
        f"The client reported that {rng.choice(effects)} still appears on difficult days.",
    ]
    if rng.random() < 0.35:
        phrase = rng.choice(_BANGLA_PHRASES)
        parts.append(f'The client again mentioned "{phrase}" when describing the week.')
    parts.append("Homework was agreed for the coming week and noted in the register.")
    return " ".join(parts)


def _closing_narrative(
    rng: random.Random,
    session_index: int,
    outcome: str,
    interventions: List[str],
    marker_only: bool,
) -> str:
    parts = [
        f"At session {session_index} the client arrived on time and appeared more settled.",
        f"After continued practice of {interventions[0]}, the client reported {outcome}.",
    ]
    if marker_only:
        parts.append("Overall the situation has improved and worry has reduced.")
    parts.append(
        "The para-counselor summarized the progress, reinforced the coping "
        "steps, and closed the case with an open door for follow-up."
    )
    return " ".join(parts)


def _pad_narrative(rng: random.Random, text: str, target_words: int) -> str:
    fillers = [
        "The para-counselor noted the surrounding circumstances in detail, "
        "including who lives in the household, how money comes in and goes "
        "out across the month, and which relatives can be called on for help.",
        "The client walked through the daily routine from morning to night, "
        "naming the moments when the pressure feels heaviest and the short "
        "stretches when it eases.",
        "Together they listed the small steps already tried, what helped for "
        "a day or two, and what fell away when the week turned difficult.",
    ]
    words = text.split()
    while len(words) < target_words:
        sentence = rng.choice(fillers)
        words.extend(sentence.split())
    return " ".join(words)


def generate_reference_corpus(seed: int = DEFAULT_SEED) -> List[CaseRecord]:
    rng = random.Random(seed)

    literacy = _flatten(LITERACY_COUNTS)
    occupation = _flatten(OCCUPATION_COUNTS)
    sex = _flatten(SEX_COUNTS)
    marital = _flatten(MARITAL_COUNTS)
    for column in (literacy, occupation, sex, marital):
        rng.shuffle(column)

    # marker_only records state the outcome in prose instead of the field
    marker_only_ids = set(rng.sample(range(1, CASE_COUNT + 1), 9))
    # a few long sessions to exercise multi-chunk splitting
    long_case_ids = set(rng.sample(range(1, CASE_COUNT + 1), 3))

    records: List[CaseRecord] = []
    for i in range(1, CASE_COUNT + 1):
        case_id = f"case-{i:03d}"
        demo = Demographics(
            age=rng.randint(19, 60),
            sex=sex[i - 1],
            marital_status=marital[i - 1],
            occupation=occupation[i - 1],
            literacy_level=literacy[i - 1],
        )

        causes = _sample(rng, POVERTY_DRIVER_LABELS, rng.randint(1, 2))
        if rng.random() < 0.7:
            extra_pool = [c for c in CAUSE_LABELS if c not in causes]
            causes.extend(_sample(rng, extra_pool, 1))
        effects = _sample(rng, EFFECT_LABELS, rng.randint(1, 3))
        interventions = _sample(rng, INTERVENTION_LABELS, rng.randint(1, 3))
        outcome = rng.choice(OUTCOME_LABELS)
        marker_only = i in marker_only_ids

        session_count = rng.randint(2, 6)
        sessions: List[SessionNote] = []
        for index in range(1, session_count + 1):
            if index == 1:
                narrative = _intake_narrative(rng, demo, causes, effects)
            elif index == session_count:
                narrative = _closing_narrative(rng, index, outcome, interventions, marker_only)
            else:
                narrative = _progress_narrative(rng, index, causes, effects, interventions)
            if index == 1 and i in long_case_ids:
                narrative = _pad_narrative(rng, narrative, 650)
            sessions.append(
                SessionNote(
                    index=index,
                    narrative=narrative,
                    contextual_factors=list(causes),
                    emotional_responses=list(effects),
                    interventions_given=interventions[: max(1, index - 1)] if index > 1 else [],
                )
            )

        records.append(
            CaseRecord(
                id=case_id,
                demographics=demo,
                distress_causes=list(causes),
                sessions=sessions,
                outcomes=[] if marker_only else [outcome],
            )
        )
    return records
