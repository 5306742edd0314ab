import random

from citnet.corpus import extract_issns, issn_check_digit, validate_issn

from oracles import issn_valid_oracle


def test_worked_examples():
    # weighted sums computed by hand: 120 % 11 = 10 -> check 1;
    # 122 % 11 = 1 -> check 10 encoded as X
    assert validate_issn("0317-8471") is True
    assert validate_issn("0317-8472") is False
    assert validate_issn("2434-561X") is True


def test_shape_rules():
    assert not validate_issn("03178471")        # dash required
    assert not validate_issn("0317-847")
    assert not validate_issn("0317-84711")
    assert not validate_issn("0317_8471")
    assert not validate_issn("2434-561x")       # lowercase check char
    assert not validate_issn("X317-8471")       # X only allowed last
    assert not validate_issn("")
    assert not validate_issn(None)


def test_check_digit_round_trip():
    for digits in ("0317847", "2434561", "0000000", "9999999"):
        check = issn_check_digit(digits)
        assert validate_issn(f"{digits[:4]}-{digits[4:]}{check}")


def test_agreement_with_bruteforce_oracle():
    rng = random.Random(20200317)
    alphabet = "0123456789X-"
    agreed = 0
    for _ in range(10000):
        if rng.random() < 0.7:
            # well-shaped candidate with a random final character
            digits = "".join(rng.choice("0123456789") for _ in range(7))
            cand = f"{digits[:4]}-{digits[4:]}{rng.choice('0123456789X')}"
        else:
            cand = "".join(rng.choice(alphabet)
                           for _ in range(rng.randint(6, 10)))
        assert validate_issn(cand) == issn_valid_oracle(cand)
        agreed += 1
    assert agreed == 10000


def test_extract_keyword_window():
    assert extract_issns("ISSN: 0317-8471") == ["0317-8471"]
    # fails the checksum, so the shaped token is excluded
    assert extract_issns("ISSN print 0317-8472 online") == []
    # no keyword: a valid number alone is never picked up
    assert extract_issns("volume 12 2434-561X pages 3-9") == []


def test_extract_window_is_five_tokens():
    text = "ISSN one two three four 0317-8471 six"
    assert extract_issns(text) == ["0317-8471"]
    text = "ISSN one two three four five 0317-8471"
    assert extract_issns(text) == []


def test_extract_punctuation_and_dedup():
    text = 'ISSN: (0317-8471); "2434-561X" ISSN 0317-8471'
    assert extract_issns(text) == ["0317-8471", "2434-561X"]


def test_extract_case_flag():
    assert extract_issns("issn 0317-8471") == ["0317-8471"]
    assert extract_issns("issn 0317-8471", keyword_case_sensitive=True) == []
    assert extract_issns("ISSN 0317-8471", keyword_case_sensitive=True) == \
        ["0317-8471"]


def test_extract_never_returns_invalid():
    rng = random.Random(7)
    words = ["ISSN", "0317-8471", "2434-561X", "1234-5678", "journal",
             "ISSN:", "of", "0000-0000", "printing;"]
    for _ in range(300):
        text = " ".join(rng.choice(words)
                        for _ in range(rng.randint(1, 12)))
        for found in extract_issns(text):
            assert validate_issn(found)
