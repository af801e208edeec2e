"""Answer scoring: a deterministic stub judge for CI and an LLM judge for
live replication runs."""

from __future__ import annotations

import json
import re
import string
from pathlib import Path
from typing import Protocol

from pydantic import BaseModel

from ..llm import LlmGateway, extract_json_document, system, user

RUBRIC_PATH = Path(__file__).parent / "data" / "judge_rubric.txt"


class JudgeVerdict(BaseModel):
    model_config = {"frozen": True}

    score: int  # 1..5
    reason: str
    flagged: bool = False  # parse-failure fallbacks are flagged for review


class Judge(Protocol):
    def judge(self, prompt: str, expected_answer: str, actual_answer: str) -> JudgeVerdict: ...


_PUNCTUATION = str.maketrans("", "", string.punctuation)


def _normalize(text: str) -> str:
    return " ".join(text.lower().translate(_PUNCTUATION).split())


class StubJudge:
    """Deterministic containment scoring; the CI stand-in for a judge model."""

    def judge(self, prompt: str, expected_answer: str, actual_answer: str) -> JudgeVerdict:
        actual = _normalize(actual_answer)
        expected = _normalize(expected_answer)
        if not actual:
            return JudgeVerdict(score=1, reason="empty answer")
        if expected and expected in actual:
            return JudgeVerdict(score=5, reason="expected content present")
        expected_words = set(expected.split())
        overlap = len(expected_words & set(actual.split())) / max(len(expected_words), 1)
        if overlap >= 0.8:
            return JudgeVerdict(score=4, reason="most of the expected content present")
        if overlap >= 0.4:
            return JudgeVerdict(score=3, reason="partially matches the expected content")
        return JudgeVerdict(score=2, reason="expected content not found")


def parse_score(content: str) -> tuple[int, str] | None:
    """Pull (score, reason) out of a judge reply; None when hopeless."""
    doc = extract_json_document(content)
    if isinstance(doc, dict) and "score" in doc:
        try:
            score = int(doc["score"])
        except (TypeError, ValueError):
            return None
        if 1 <= score <= 5:
            return score, str(doc.get("reason", "")).strip()
        return None
    labelled = re.search(r"score\s*[:=]?\s*([1-5])\b", content, re.IGNORECASE)
    if labelled:
        return int(labelled.group(1)), content.strip()
    alone = re.fullmatch(r"\s*([1-5])(?:\s*/\s*5)?\s*", content)
    if alone:
        return int(alone.group(1)), ""
    return None


class LlmJudge:
    """Judge backed by a chat model; retries one parse failure, then flags."""

    def __init__(self, gateway: LlmGateway, profile_name: str):
        self.gateway = gateway
        self.profile_name = profile_name
        self.rubric = RUBRIC_PATH.read_text()

    def judge(self, prompt: str, expected_answer: str, actual_answer: str) -> JudgeVerdict:
        payload = json.dumps(
            {"request": prompt, "reference_answer": expected_answer, "actual_answer": actual_answer},
            indent=2,
        )
        profile = self.gateway.profile_for(self.profile_name)
        from ..llm import ChatRequest

        request = ChatRequest(
            model=profile.model,
            messages=[system(self.rubric), user(payload)],
            temperature=0.0,
        )
        for attempt in range(2):
            response = self.gateway.complete(self.profile_name, request, module="Judge")
            parsed = parse_score(response.content)
            if parsed is not None:
                score, reason = parsed
                return JudgeVerdict(score=score, reason=reason or response.content.strip())
        return JudgeVerdict(score=1, reason="judge parse failure", flagged=True)
