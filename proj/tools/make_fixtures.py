#!/usr/bin/env python3
"""Generate icon exemplars and the screenshot fixtures.

Outputs:
  data/icons/<Class_Name>/{0,1,2}.png      tight-cropped exemplars, 3 per class
  tests/fixtures/fig1c/                    staged screenshot, OCR boxes, policy
  tests/fixtures/micro/apps/...            3-app / 10-screenshot micro dataset

Deterministic: rerunning produces identical files. The micro dataset's
expected metrics live in tests/fixtures/micro/expected.json (hand-written).
"""

import json
import os
import sys

from PIL import Image, ImageDraw, ImageFont

ROOT = os.path.dirname(os.path.dirname(os.path.abspath(__file__)))
FONT = ImageFont.truetype("/usr/share/fonts/truetype/dejavu/DejaVuSans.ttf", 20)
INK = (33, 33, 33)
WHITE = (255, 255, 255)
SCREEN = (360, 640)

CLASSES = [
    "Call", "Email", "Avatar", "Group", "Follow", "Location crosshair", "Location",
    "Photo", "Videocam", "Wallpaper", "Microphone", "Cart", "Facebook", "Twitter",
]


def glyph(d, name, box, variant=0):
    """Draw icon `name` inside box (x, y, s) on ImageDraw `d`."""
    x0, y0, s = box
    inset = 0.04 if variant == 2 else 0.0
    sw = {0: 0.09, 1: 0.12, 2: 0.075}[variant]

    def P(u, v):
        u = inset + u * (1 - 2 * inset)
        v = inset + v * (1 - 2 * inset)
        return (round(x0 + u * (s - 1)), round(y0 + v * (s - 1)))

    def R(u0, v0, u1, v1):
        return [P(u0, v0), P(u1, v1)]

    W = max(2, round(sw * s))

    if name == "Call":
        d.arc(R(0.05, 0.05, 0.95, 0.95), 100, 350, fill=INK, width=W + 2)
        d.ellipse(R(0.0, 0.55, 0.3, 0.95), fill=INK)
        d.ellipse(R(0.62, 0.0, 0.98, 0.32), fill=INK)
    elif name == "Email":
        d.rectangle(R(0.0, 0.18, 1.0, 0.82), outline=INK, width=W)
        d.line([P(0.0, 0.18), P(0.5, 0.55), P(1.0, 0.18)], fill=INK, width=W)
    elif name == "Avatar":
        d.ellipse(R(0.28, 0.0, 0.72, 0.5), fill=INK)
        d.pieslice(R(0.05, 0.45, 0.95, 1.45), 180, 360, fill=INK)
    elif name == "Group":
        d.ellipse(R(0.05, 0.1, 0.4, 0.5), fill=INK)
        d.ellipse(R(0.55, 0.1, 0.9, 0.5), fill=INK)
        d.pieslice(R(0.0, 0.45, 0.55, 1.3), 180, 360, fill=INK)
        d.pieslice(R(0.45, 0.45, 1.0, 1.3), 180, 360, fill=INK)
    elif name == "Follow":
        d.ellipse(R(0.1, 0.05, 0.5, 0.5), fill=INK)
        d.pieslice(R(0.0, 0.45, 0.65, 1.4), 180, 360, fill=INK)
        d.rectangle(R(0.6, 0.5, 1.0, 0.62), fill=INK)
        d.rectangle(R(0.74, 0.36, 0.86, 0.76), fill=INK)
    elif name == "Location crosshair":
        d.ellipse(R(0.15, 0.15, 0.85, 0.85), outline=INK, width=W)
        d.ellipse(R(0.4, 0.4, 0.6, 0.6), fill=INK)
        d.rectangle(R(0.46, 0.0, 0.54, 0.2), fill=INK)
        d.rectangle(R(0.46, 0.8, 0.54, 1.0), fill=INK)
        d.rectangle(R(0.0, 0.46, 0.2, 0.54), fill=INK)
        d.rectangle(R(0.8, 0.46, 1.0, 0.54), fill=INK)
    elif name == "Location":
        d.ellipse(R(0.15, 0.0, 0.85, 0.7), fill=INK)
        d.polygon([P(0.19, 0.48), P(0.81, 0.48), P(0.5, 1.0)], fill=INK)
        d.ellipse(R(0.36, 0.21, 0.64, 0.49), fill=WHITE)
    elif name == "Photo":
        d.rectangle(R(0.0, 0.1, 1.0, 0.9), outline=INK, width=W)
        d.polygon([P(0.05, 0.86), P(0.35, 0.45), P(0.55, 0.7), P(0.7, 0.55), P(0.95, 0.86)], fill=INK)
        d.ellipse(R(0.68, 0.2, 0.85, 0.37), fill=INK)
    elif name == "Videocam":
        d.rectangle(R(0.0, 0.22, 0.66, 0.78), fill=INK)
        d.polygon([P(0.6, 0.5), P(1.0, 0.22), P(1.0, 0.78)], fill=INK)
    elif name == "Wallpaper":
        d.rectangle(R(0.0, 0.0, 1.0, 1.0), outline=INK, width=W)
        d.rectangle(R(0.46, 0.0, 0.54, 1.0), fill=INK)
        d.rectangle(R(0.0, 0.46, 1.0, 0.54), fill=INK)
    elif name == "Microphone":
        d.rounded_rectangle(R(0.34, 0.0, 0.66, 0.6), radius=round(0.16 * s), fill=INK)
        d.arc(R(0.18, 0.2, 0.82, 0.78), 0, 180, fill=INK, width=W)
        d.rectangle(R(0.46, 0.76, 0.54, 0.94), fill=INK)
        d.rectangle(R(0.28, 0.9, 0.72, 1.0), fill=INK)
    elif name == "Cart":
        d.line([P(0.0, 0.08), P(0.18, 0.08), P(0.3, 0.7), P(0.88, 0.7)], fill=INK, width=W)
        d.polygon([P(0.2, 0.2), P(1.0, 0.2), P(0.9, 0.55), P(0.27, 0.55)], fill=INK)
        d.ellipse(R(0.25, 0.72, 0.45, 0.92), fill=INK)
        d.ellipse(R(0.7, 0.72, 0.9, 0.92), fill=INK)
    elif name == "Facebook":
        d.rounded_rectangle(R(0.0, 0.0, 1.0, 1.0), radius=round(0.15 * s), fill=(59, 89, 152))
        d.rectangle(R(0.48, 0.25, 0.62, 1.0), fill=WHITE)
        d.rectangle(R(0.36, 0.45, 0.76, 0.57), fill=WHITE)
        d.pieslice(R(0.48, 0.12, 0.88, 0.52), 180, 270, fill=WHITE)
    elif name == "Twitter":
        d.ellipse(R(0.1, 0.3, 0.8, 0.85), fill=INK)
        d.ellipse(R(0.55, 0.1, 0.9, 0.45), fill=INK)
        d.polygon([P(0.85, 0.2), P(1.0, 0.18), P(0.88, 0.35)], fill=INK)
        d.polygon([P(0.0, 0.2), P(0.45, 0.55), P(0.2, 0.6)], fill=INK)
        d.polygon([P(0.15, 0.75), P(0.0, 1.0), P(0.4, 0.85)], fill=INK)
    else:
        raise ValueError(name)


def tight_bbox(img, bg=WHITE):
    """Bounding box (x, y, w, h) of pixels differing from bg."""
    diff = Image.new("RGB", img.size, bg)
    from PIL import ImageChops
    box = ImageChops.difference(img, diff).getbbox()
    return (box[0], box[1], box[2] - box[0], box[3] - box[1])


def icon_bbox(name, box, variant=0):
    """Tight bbox of a glyph drawn at box, measured on a scratch canvas."""
    canvas = Image.new("RGB", SCREEN, WHITE)
    glyph(ImageDraw.Draw(canvas), name, box, variant)
    return tight_bbox(canvas)


def write_exemplars():
    base = os.path.join(ROOT, "data", "icons")
    for name in CLASSES:
        out = os.path.join(base, name.replace(" ", "_"))
        os.makedirs(out, exist_ok=True)
        for v in range(3):
            img = Image.new("RGB", (112, 112), WHITE)
            glyph(ImageDraw.Draw(img), name, (8, 8, 96), v)
            x, y, w, h = tight_bbox(img)
            img.crop((x, y, x + w, y + h)).save(os.path.join(out, f"{v}.png"), optimize=False)


class Screen:
    def __init__(self):
        self.img = Image.new("RGB", SCREEN, WHITE)
        self.d = ImageDraw.Draw(self.img)
        self.boxes = []

    def text(self, s, x, y):
        self.d.text((x, y), s, font=FONT, fill=INK)
        l, t, r, b = self.d.textbbox((x, y), s, font=FONT)
        box = {"x": l - 2, "y": t - 2, "w": r - l + 4, "h": b - t + 4}
        self.boxes.append({"bbox": box, "text": s, "confidence": 0.98})
        return box

    def icon(self, name, x, y, s):
        bx, by, bw, bh = icon_bbox(name, (x, y, s))
        glyph(self.d, name, (x, y, s))
        return {"x": bx, "y": by, "w": bw, "h": bh}

    def save(self, png, ocr):
        self.img.save(png, optimize=False)
        with open(ocr, "w") as f:
            json.dump({"boxes": self.boxes}, f, indent=2)
            f.write("\n")


def ctx(box, data_type, kind):
    return {"bbox": box, "data_type": data_type, "kind": kind}


FIG1C_POLICY = """<!DOCTYPE html>
<html>
<head><title>Privacy Policy</title></head>
<body>
<h1>Privacy Policy</h1>
<p>This policy explains how this app handles your information.</p>
<h2>Information We Collect</h2>
<p>We collect your location to recommend nearby events. We use your birthday to verify your age.</p>
<p>We collect your email address when you sign up.</p>
<h2>Your Choices</h2>
<p>You can turn off notifications at any time.</p>
</body>
</html>
"""


def write_fig1c():
    out = os.path.join(ROOT, "tests", "fixtures", "fig1c")
    os.makedirs(out, exist_ok=True)
    s = Screen()
    s.text("Share your location", 24, 40)
    s.text("Welcome back!", 24, 90)
    pin = s.icon("Location", 112, 220, 136)
    s.text("use your birthday", 24, 420)
    s.save(os.path.join(out, "screenshot.png"), os.path.join(out, "ocr.json"))
    with open(os.path.join(out, "policy.html"), "w") as f:
        f.write(FIG1C_POLICY)
    with open(os.path.join(out, "icon_bbox.json"), "w") as f:
        json.dump(pin, f)
        f.write("\n")


POLICIES = {
    "app_a": """<html><body>
<h2>Information We Collect</h2>
<p>We collect your location to show nearby stores.</p>
<p>We collect your email address to send receipts.</p>
<h2>Contact Us</h2>
<p>Write to our support team with any questions.</p>
</body></html>
""",
    "app_b": """<html><body>
<p>When you pay for an order we process your payment details.</p>
<p>We access your camera so you can scan receipts.</p>
<p>Thank you for reading.</p>
</body></html>
""",
    "app_c": """<html><body>
<h2>Types of Data</h2>
<p>We collect your name when you register.</p>
<p>We collect pics that you upload.</p>
<h2>Contact Us</h2>
<p>Send a message to our team.</p>
</body></html>
""",
}

NO = "No relative information is found in the privacy policy."

SEGMENTS = {
    "app_a": {
        "Location": {"found": True, "text": "We collect your location to show nearby stores."},
        "Email": {"found": True, "text": "Receipts are sent by mail."},
        "Phone": {"found": True, "text": "We collect your phone number for delivery."},
        "Photos": {"found": False, "text": NO},
    },
    "app_b": {
        "FinancialInfo": {"found": True, "text": "When you pay for an order we process your payment details."},
        "Photos": {"found": False, "text": NO},
        "Location": {"found": True, "text": "We use your location."},
    },
    "app_c": {
        "Name": {"found": True, "text": "We collect your name when you register."},
        "Photos": {"found": True, "text": "We collect pics that you upload."},
        "Voices": {"found": False, "text": NO},
        "SocialMedia": {"found": True, "text": "We share data with Facebook."},
    },
}


def shifted_half(box):
    return {"x": box["x"] + box["w"] // 2, "y": box["y"], "w": box["w"], "h": box["h"]}


def micro_screens():
    """(app, key) -> (Screen, gt contexts)."""
    screens = {}

    s = Screen()
    t1 = s.text("Share your location", 24, 40)
    s.text("Welcome back!", 24, 90)
    pin = s.icon("Location", 112, 250, 136)
    screens[("app_a", "1")] = (s, [ctx(t1, "Location", "textual"), ctx(pin, "Location", "iconic")])

    s = Screen()
    t1 = s.text("Enter your email", 24, 40)
    t2 = s.text("Your phone number", 24, 90)
    screens[("app_a", "2")] = (s, [ctx(t1, "Email", "textual"), ctx(t2, "Name", "textual")])

    s = Screen()
    t1 = s.text("Use your birthday", 24, 40)
    mic = s.icon("Microphone", 112, 250, 136)
    screens[("app_a", "3")] = (s, [ctx(shifted_half(t1), "Birthday", "textual"),
                                   ctx(mic, "Voices", "iconic")])

    s = Screen()
    s.text("Settings", 24, 40)
    s.text("Good morning", 24, 90)
    screens[("app_a", "4")] = (s, [])

    s = Screen()
    t1 = s.text("Pay now", 24, 40)
    cart = s.icon("Cart", 112, 250, 136)
    screens[("app_b", "1")] = (s, [ctx(t1, "FinancialInfo", "textual"), ctx(cart, "FinancialInfo", "iconic")])

    s = Screen()
    t1 = s.text("Take a photo", 24, 40)
    photo = s.icon("Photo", 112, 250, 136)
    missed = {"x": 40, "y": 520, "w": 80, "h": 80}
    screens[("app_b", "2")] = (s, [ctx(t1, "Photos", "textual"), ctx(photo, "Photos", "iconic"),
                                   ctx(missed, "Photos", "iconic")])

    s = Screen()
    s.text("Welcome back!", 24, 40)
    avatar = s.icon("Avatar", 150, 300, 60)
    screens[("app_b", "3")] = (s, [ctx(avatar, "Profile", "iconic")])

    s = Screen()
    t1 = s.text("Your name", 24, 40)
    t2 = s.text("Sign in with Facebook", 24, 90)
    screens[("app_c", "1")] = (s, [ctx(t1, "Name", "textual"), ctx(t2, "SocialMedia", "textual")])

    s = Screen()
    t1 = s.text("Record a voice note", 24, 40)
    s.icon("Microphone", 112, 250, 136)
    screens[("app_c", "2")] = (s, [ctx(t1, "Voices", "textual")])

    s = Screen()
    s.text("Find friends nearby", 24, 40)
    pin = s.icon("Location", 112, 250, 136)
    screens[("app_c", "3")] = (s, [ctx(pin, "Contacts", "iconic")])
    return screens


def write_micro():
    root = os.path.join(ROOT, "tests", "fixtures", "micro", "apps")
    for app, html in POLICIES.items():
        base = os.path.join(root, app)
        for sub in ("screenshots", "annotations", "ocr"):
            os.makedirs(os.path.join(base, sub), exist_ok=True)
        with open(os.path.join(base, "policy.html"), "w") as f:
            f.write(html)
        with open(os.path.join(base, "segments.json"), "w") as f:
            json.dump(SEGMENTS[app], f, indent=2)
            f.write("\n")
    for (app, key), (screen, gt) in micro_screens().items():
        base = os.path.join(root, app)
        screen.save(os.path.join(base, "screenshots", f"{key}.png"), os.path.join(base, "ocr", f"{key}.json"))
        with open(os.path.join(base, "annotations", f"{key}.json"), "w") as f:
            json.dump({"contexts": gt}, f, indent=2)
            f.write("\n")


def main():
    write_exemplars()
    write_fig1c()
    write_micro()
    return 0


if __name__ == "__main__":
    sys.exit(main())
