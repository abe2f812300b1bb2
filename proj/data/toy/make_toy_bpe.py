"""Writes toy_bpe.json: a byte-level BPE model with all 256 byte symbols
and a hand-picked set of merged Turkish subwords."""
import json


def byte_table():
    keep = list(range(33, 127)) + list(range(161, 173)) + list(range(174, 256))
    table, extra = {}, 256
    for b in range(256):
        if b in keep:
            table[b] = chr(b)
        else:
            table[b] = chr(extra)
            extra += 1
    return table


TOKENS = [
    "ev", "ler", "lar", " ev", "imiz", "den", "dan", " ok", "ul", " okul", "a",
    " git", "ti", "tik", " Ali", " ve", " bu", " soru", "ı", "ç", "ş", "ğ", "ü",
    "ö", "İ", "Ev", "ın", "da", "de", " kitab", " masa", " çocuk", " bah", "çe",
    " oyn", "uyor", " büyük", " göz", " yol", "dı", " yıl", "ında", " bıraktı",
]


def main():
    table = byte_table()
    vocab, merges = {}, []
    for b in range(256):
        vocab[table[b]] = len(vocab)
    for tok in TOKENS:
        syms = [table[b] for b in tok.encode("utf-8")]
        cur = syms[0]
        for s in syms[1:]:
            merged = cur + s
            if merged not in vocab:
                vocab[merged] = len(vocab)
                merges.append(f"{cur} {s}")
            cur = merged
    model = {"kind": "byte-bpe", "marker": "byte-level-space", "vocab": vocab, "merges": merges}
    with open("toy_bpe.json", "w", encoding="utf-8") as f:
        json.dump(model, f, ensure_ascii=False, indent=1)


if __name__ == "__main__":
    main()
