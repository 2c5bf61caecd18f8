"""Independent asset-name oracle: sha256 of the canonical prompt JSON.

Usage: asset_name.py <negative_prompts.txt>
Prints the asset reference for the frozen sample proposal.
"""
import hashlib
import json
import sys

IMAGE_PROMPT = "a glowing energy ball\nScene: Soccer Ball: when flag clicked.\nCharacters: Striker, Soccer Ball."


def negative_terms(path):
    with open(path, encoding="utf-8") as f:
        lines = [l.strip() for l in f]
    return [l for l in lines if l and not l.startswith("#")]


def main():
    negative = ", ".join(negative_terms(sys.argv[1]))
    doc = json.dumps({"image_prompt": IMAGE_PROMPT, "negative_prompt": negative},
                     sort_keys=True, separators=(",", ":"), ensure_ascii=False)
    digest = hashlib.sha256(doc.encode("utf-8")).hexdigest()
    print(negative)
    print(f"{digest[:2]}/{digest}.png")


if __name__ == "__main__":
    main()
